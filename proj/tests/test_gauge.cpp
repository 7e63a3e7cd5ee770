#include <catch2/catch.hpp>

#include <random>

#include "qmet/minkowski.hpp"

using namespace qmet;

namespace {

Vec v2(long a, long b) { return {Rational(a), Rational(b)}; }

SeminormRep coordinate_max(const AbsoluteValueSpec& spec, std::size_t dim) {
    SeminormRep::MaxFunctionals mf;
    for (std::size_t i = 0; i < dim; ++i) {
        Vec row(dim, Rational(0));
        row[i] = 1;
        mf.rows.push_back(std::move(row));
    }
    return SeminormRep(VectorSpaceQn(dim, spec), std::move(mf));
}

Vec random_vec(std::mt19937_64& rng, std::size_t dim, long bound = 50) {
    Vec v(dim);
    for (auto& x : v)
        x = make_rational(static_cast<long>(rng() % (2 * bound + 1)) - bound,
                          static_cast<long>(rng() % bound + 1));
    return v;
}

}  // namespace

TEST_CASE("seminorm evaluation") {
    // p-adic coordinate max norm: N((1/2, 3)) = max(2, 1) = 2
    const SeminormRep n2 = coordinate_max(AbsoluteValueSpec::padic(2), 2);
    CHECK(magnitude_eq(eval_seminorm(n2, {make_rational(1, 2), Rational(3)}),
                       Magnitude::of_rational(Rational(2))));
    CHECK(eval_seminorm(n2, v2(0, 0)).is_zero());

    // quotient by the diagonal: zero on it, one off it
    const SeminormRep q(VectorSpaceQn(2, AbsoluteValueSpec::trivial()),
                        SeminormRep::QuotientBySubspace{{v2(1, 1)}});
    CHECK(eval_seminorm(q, v2(2, 2)).is_zero());
    CHECK(magnitude_eq(eval_seminorm(q, v2(1, 0)), Magnitude::one()));

    // trivial ultranorm
    const SeminormRep t(VectorSpaceQn(2, AbsoluteValueSpec::trivial()), SeminormRep::TrivialNorm{});
    CHECK(magnitude_eq(eval_seminorm(t, v2(5, -3)), Magnitude::one()));

    // power sum with r = 2 over the archimedean spec: (|x|^2 + |y|^2)^(1/2)
    const SeminormRep ps(VectorSpaceQn(2, AbsoluteValueSpec::archimedean()),
                         SeminormRep::PowerSum{{v2(1, 0), v2(0, 1)}, Rational(2)});
    const Magnitude hyp = eval_seminorm(ps, v2(3, 4));
    CHECK(magnitude_eq(hyp, Magnitude::of_rational(Rational(5))));  // 25^(1/2)

    // gauge: N(x) = max(x, 0) on Q^1
    const SeminormRep g(VectorSpaceQn(1, AbsoluteValueSpec::archimedean()),
                        SeminormRep::Gauge{{{Rational(1)}}});
    CHECK(magnitude_eq(eval_seminorm(g, {Rational(3)}), Magnitude::of_rational(Rational(3))));
    CHECK(eval_seminorm(g, {Rational(-3)}).is_zero());

    // variant/spec mismatches
    CHECK_THROWS_AS(SeminormRep(VectorSpaceQn(2, AbsoluteValueSpec::padic(2)),
                                SeminormRep::PowerSum{{v2(1, 0)}, Rational(2)}),
                    input_error);
    CHECK_THROWS_AS(SeminormRep(VectorSpaceQn(2, AbsoluteValueSpec::archimedean()),
                                SeminormRep::TrivialNorm{}),
                    input_error);
    CHECK_THROWS_AS(SeminormRep(VectorSpaceQn(2, AbsoluteValueSpec::padic(3)),
                                SeminormRep::Gauge{{v2(1, 0)}}),
                    input_error);
}

TEST_CASE("homogeneity is exact for every variant") {
    std::mt19937_64 rng(51);
    std::vector<std::pair<Rational, Vec>> samples{{Rational(0), v2(1, 2)},
                                                  {make_rational(1, 3), v2(6, -9)},
                                                  {Rational(-2), v2(5, 7)}};
    for (int trial = 0; trial < 50; ++trial)
        samples.emplace_back(make_rational(static_cast<long>(rng() % 21) - 10,
                                           static_cast<long>(rng() % 10 + 1)),
                             random_vec(rng, 2));

    for (const auto& spec : {AbsoluteValueSpec::padic(3), AbsoluteValueSpec::trivial(),
                             AbsoluteValueSpec::archimedean(),
                             AbsoluteValueSpec::archimedean_power(make_rational(1, 2))}) {
        const SeminormRep n = coordinate_max(spec, 2);
        const SampleReport report = check_homogeneity(n, samples);
        CHECK(report.passed);
    }

    // |t| = 1 leaves the norm fixed: t = -1 under any spec
    const SeminormRep n3 = coordinate_max(AbsoluteValueSpec::padic(3), 2);
    const Vec v = v2(7, 12);
    CHECK(magnitude_eq(eval_seminorm(n3, vec_scale(Rational(-1), v)), eval_seminorm(n3, v)));

    // PAdic(3) max norm at t = 1/3: N((1/3)(1,0)) = 3
    CHECK(magnitude_eq(eval_seminorm(n3, {make_rational(1, 3), Rational(0)}),
                       Magnitude::of_rational(Rational(3))));

    // the other representation variants are exactly homogeneous too
    const SeminormRep ps(VectorSpaceQn(2, AbsoluteValueSpec::archimedean()),
                         SeminormRep::PowerSum{{v2(1, 0), v2(0, 1)}, Rational(2)});
    CHECK(check_homogeneity(ps, samples).passed);
    const SeminormRep quot(VectorSpaceQn(2, AbsoluteValueSpec::trivial()),
                           SeminormRep::QuotientBySubspace{{v2(1, 1)}});
    CHECK(check_homogeneity(quot, samples).passed);
    const SeminormRep triv(VectorSpaceQn(2, AbsoluteValueSpec::trivial()),
                           SeminormRep::TrivialNorm{});
    CHECK(check_homogeneity(triv, samples).passed);
    const SeminormRep gauge(VectorSpaceQn(2, AbsoluteValueSpec::archimedean()),
                            SeminormRep::Gauge{{v2(1, -1)}});
    const SampleReport gr = check_homogeneity(gauge, samples);
    CHECK(gr.passed);  // nonnegative scalars only; negatives are skipped
}

TEST_CASE("ultranorm and shift lemma") {
    std::mt19937_64 rng(52);
    std::vector<std::pair<Vec, Vec>> pairs{{v2(1, 0), v2(0, 1)}, {v2(1, 2), v2(0, 0)}};
    // pairs designed to fire the shift hypothesis N(v - w) < N(v):
    // w = v (difference 0) and w = v + small p-adic perturbation
    pairs.push_back({v2(1, 0), v2(1, 0)});
    pairs.push_back({v2(1, 0), v2(26, 0)});   // v - w = -25, |.|_5 = 1/25
    pairs.push_back({v2(3, 1), v2(3, 126)});  // second coordinate shifts by 125
    for (int trial = 0; trial < 200; ++trial)
        pairs.emplace_back(random_vec(rng, 2, 20), random_vec(rng, 2, 20));

    for (const auto& spec : {AbsoluteValueSpec::padic(5), AbsoluteValueSpec::trivial()}) {
        const SeminormRep n = coordinate_max(spec, 2);
        CHECK(check_ultranorm(n, pairs).passed);
        const SampleReport shift = check_shift_lemma(n, pairs);
        CHECK(shift.passed);
        CHECK(shift.checked > 0);
    }

    // archimedean max norm is not an ultranorm: v = w = (1, 0)
    const SeminormRep arch = coordinate_max(AbsoluteValueSpec::archimedean(), 2);
    CHECK_FALSE(check_ultranorm(arch, {{v2(1, 0), v2(1, 0)}}).passed);
}

TEST_CASE("balanced and starlike hull membership") {
    const VectorSpaceQn arch2(2, AbsoluteValueSpec::archimedean());
    const BalancedSetRep hull(arch2, BalancedSetRep::FiniteGenerated{{v2(2, 0)}});
    CHECK(balanced_hull_membership(hull, v2(1, 0)));     // t = 1/2
    CHECK_FALSE(balanced_hull_membership(hull, v2(3, 0)));
    CHECK(balanced_hull_membership(hull, v2(0, 0)));
    CHECK(balanced_hull_membership(hull, v2(-2, 0)));    // t = -1
    CHECK(starlike_hull_membership(hull, v2(1, 0)));
    CHECK_FALSE(starlike_hull_membership(hull, v2(-1, 0)));  // t < 0

    // p-adic hull: |4|_2 = 1/4 <= 1
    const BalancedSetRep p2(VectorSpaceQn(2, AbsoluteValueSpec::padic(2)),
                            BalancedSetRep::FiniteGenerated{{v2(1, 0)}});
    CHECK(balanced_hull_membership(p2, v2(4, 0)));
    CHECK_FALSE(balanced_hull_membership(p2, {make_rational(1, 2), Rational(0)}));
    CHECK_THROWS_AS(starlike_hull_membership(p2, v2(1, 0)), input_error);
}

TEST_CASE("absorbing classification") {
    const VectorSpaceQn p2(2, AbsoluteValueSpec::padic(2));
    CHECK(is_absorbing(BalancedSetRep(p2, BalancedSetRep::ClosedUnitBall{coordinate_max(
                           AbsoluteValueSpec::padic(2), 2)}))
              .absorbing);
    CHECK(is_absorbing(BalancedSetRep(p2, BalancedSetRep::PAdicLattice{{v2(1, 0), v2(0, 1)}}))
              .absorbing);

    // a finitely generated hull in dimension 2 is a union of lines
    const AbsorbingReport lines =
        is_absorbing(BalancedSetRep(p2, BalancedSetRep::FiniteGenerated{{v2(1, 0)}}));
    CHECK_FALSE(lines.absorbing);
    REQUIRE(lines.witness.has_value());
    CHECK_FALSE(balanced_hull_membership(
        BalancedSetRep(p2, BalancedSetRep::FiniteGenerated{{v2(1, 0)}}), *lines.witness));

    // dimension 1 hull with a nonzero generator absorbs
    CHECK(is_absorbing(BalancedSetRep(VectorSpaceQn(1, AbsoluteValueSpec::archimedean()),
                                      BalancedSetRep::FiniteGenerated{{{Rational(2)}}}))
              .absorbing);

    // trivial spec: only V absorbs
    const VectorSpaceQn triv(2, AbsoluteValueSpec::trivial());
    const SeminormRep tnorm(triv, SeminormRep::TrivialNorm{});
    CHECK(is_absorbing(BalancedSetRep(triv, BalancedSetRep::ClosedUnitBall{tnorm})).absorbing);
    CHECK_FALSE(is_absorbing(BalancedSetRep(triv, BalancedSetRep::OpenUnitBall{tnorm})).absorbing);
    CHECK_FALSE(
        is_absorbing(BalancedSetRep(triv, BalancedSetRep::FiniteGenerated{{v2(1, 0)}})).absorbing);
}

TEST_CASE("minkowski functional per representation") {
    // archimedean closed unit ball: N_A = N; (3,4) under coordinate max = 4
    const SeminormRep arch = coordinate_max(AbsoluteValueSpec::archimedean(), 2);
    const BalancedSetRep closed(arch.space(), BalancedSetRep::ClosedUnitBall{arch});
    CHECK(magnitude_eq(minkowski_functional(closed, v2(3, 4)), Magnitude::of_rational(Rational(4))));

    // p-adic closed vs open unit balls: N((1/2, 3)) = 2, so N_C = 2, N_B = 4
    const SeminormRep p2 = coordinate_max(AbsoluteValueSpec::padic(2), 2);
    const BalancedSetRep pc(p2.space(), BalancedSetRep::ClosedUnitBall{p2});
    const BalancedSetRep po(p2.space(), BalancedSetRep::OpenUnitBall{p2});
    const Vec w{make_rational(1, 2), Rational(3)};
    CHECK(magnitude_eq(minkowski_functional(pc, w), Magnitude::of_rational(Rational(2))));
    CHECK(magnitude_eq(minkowski_functional(po, w), Magnitude::of_rational(Rational(4))));

    // monotone under inclusion: open ball inside closed ball
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec v = random_vec(rng, 2, 30);
        CHECK(magnitude_le(minkowski_functional(pc, v), minkowski_functional(po, v)));
    }

    // lattice: N_A(v) = max |(M^-1 v)_i|_p, values in the value group
    const BalancedSetRep lat(p2.space(), BalancedSetRep::PAdicLattice{{v2(2, 0), v2(1, 1)}});
    for (int trial = 0; trial < 100; ++trial) {
        const Vec v = random_vec(rng, 2, 30);
        const Magnitude m = minkowski_functional(lat, v);
        if (m.is_zero()) continue;
        const Rational r = m.as_rational().value();
        long k = 0;
        Rational x = r;
        while (x > 1) { x /= 2; ++k; }
        while (x < 1) { x *= 2; --k; }
        CHECK(x == 1);
    }

    // finitely generated: min |coefficient| over parallel generators
    const BalancedSetRep hull(arch.space(), BalancedSetRep::FiniteGenerated{{v2(2, 0), v2(6, 0)}});
    CHECK(magnitude_eq(minkowski_functional(hull, v2(3, 0)),
                       Magnitude::of_rational(make_rational(1, 2))));
    CHECK(minkowski_functional(hull, v2(0, 1)).is_infinite());

    // trivial-spec dichotomy on A = V
    const VectorSpaceQn triv(2, AbsoluteValueSpec::trivial());
    const SeminormRep tnorm(triv, SeminormRep::TrivialNorm{});
    const BalancedSetRep tv(triv, BalancedSetRep::ClosedUnitBall{tnorm});
    CHECK(minkowski_functional(tv, v2(0, 0), true).is_zero());       // trivial ultranorm
    CHECK(magnitude_eq(minkowski_functional(tv, v2(0, 0), false), Magnitude::one()));  // constant 1
    CHECK(magnitude_eq(minkowski_functional(tv, v2(1, 2), true), Magnitude::one()));
    CHECK(magnitude_eq(minkowski_functional(tv, v2(1, 2), false), Magnitude::one()));
}

TEST_CASE("unit ball recovery theorem") {
    std::mt19937_64 rng(54);
    std::vector<Vec> samples{v2(0, 0), v2(1, 0), v2(3, 4)};
    for (int trial = 0; trial < 300; ++trial) samples.push_back(random_vec(rng, 2, 40));

    // archimedean: N = N_B = N_C exactly
    const RecoveryReport arch =
        theorem_unit_ball_recovery(coordinate_max(AbsoluteValueSpec::archimedean(), 2), samples);
    CHECK(arch.applicable);
    CHECK(arch.passed);

    // p-adic value-group-valued: N_C = N, N_B = 2N, infimum attained
    const RecoveryReport padic =
        theorem_unit_ball_recovery(coordinate_max(AbsoluteValueSpec::padic(2), 2), samples);
    CHECK(padic.applicable);
    CHECK(padic.value_group_valued);
    CHECK(padic.infimum_attained);
    CHECK(padic.passed);

    // weighted p-adic norm with weight 3 is not value-group-valued: only
    // the sandwich applies
    SeminormRep::MaxFunctionals weighted;
    weighted.rows = {v2(1, 0), v2(0, 1)};
    weighted.weights = {Magnitude::of_rational(Rational(3)), Magnitude::one()};
    const SeminormRep wn(VectorSpaceQn(2, AbsoluteValueSpec::padic(2)), std::move(weighted));
    const RecoveryReport wrep = theorem_unit_ball_recovery(wn, samples);
    CHECK_FALSE(wrep.applicable);
    CHECK(wrep.passed);  // sandwich and closed-ball identity still hold

    // trivial spec: closed-ball identity
    const SeminormRep tnorm(VectorSpaceQn(2, AbsoluteValueSpec::trivial()),
                            SeminormRep::TrivialNorm{});
    CHECK(theorem_unit_ball_recovery(tnorm, samples).passed);
}

TEST_CASE("ultranorm from an infinity-convex balanced set") {
    std::mt19937_64 rng(55);
    std::vector<std::pair<Vec, Vec>> pairs;
    for (int trial = 0; trial < 200; ++trial)
        pairs.emplace_back(random_vec(rng, 2, 30), random_vec(rng, 2, 30));
    pairs.push_back({v2(1, 2), v2(-1, -2)});  // w = -v: N(0) = 0 <= max

    const VectorSpaceQn p3(2, AbsoluteValueSpec::padic(3));
    const BalancedSetRep lat(p3, BalancedSetRep::PAdicLattice{{v2(1, 0), v2(0, 1)}});
    const UltranormReport rep = ultranorm_from_convex_balanced(lat, pairs);
    CHECK(rep.passed);

    const SeminormRep pn = coordinate_max(AbsoluteValueSpec::padic(3), 2);
    const BalancedSetRep ball(p3, BalancedSetRep::ClosedUnitBall{pn});
    CHECK(ultranorm_from_convex_balanced(ball, pairs).passed);
}

TEST_CASE("ball q-convexity") {
    std::mt19937_64 rng(56);

    // archimedean l-infinity ball, q = 1: convexity with t1 = t2 = 1/2
    const SeminormRep arch = coordinate_max(AbsoluteValueSpec::archimedean(), 2);
    std::vector<QConvexitySample> samples;
    samples.push_back({make_rational(1, 2), make_rational(1, 2), v2(1, 0), v2(0, 1)});
    samples.push_back({make_rational(1, 3), make_rational(2, 3), v2(1, 1), v2(-1, 0)});
    samples.push_back({Rational(1), Rational(0), v2(1, 0), v2(0, 1)});  // t2 = 0: balancedness
    for (int trial = 0; trial < 100; ++trial) {
        // scalars with |t1| + |t2| <= 1 from a rational grid
        const long a = static_cast<long>(rng() % 5);
        const long b = static_cast<long>(rng() % (5 - a));
        Vec v = random_vec(rng, 2, 1);
        Vec w = random_vec(rng, 2, 1);
        samples.push_back({make_rational(a, 5), make_rational(b, 5), std::move(v), std::move(w)});
    }
    const QConvexityReport r1 = check_q_convexity_ball(arch, QExponent::finite(Rational(1)), samples);
    CHECK(r1.passed);
    CHECK(r1.checked > 0);

    // p-adic lattice ball: infinity-convexity subsumes every q
    const SeminormRep pn = coordinate_max(AbsoluteValueSpec::padic(2), 2);
    std::vector<QConvexitySample> psamples;
    for (int trial = 0; trial < 100; ++trial) {
        const long k1 = static_cast<long>(rng() % 3);
        const long k2 = static_cast<long>(rng() % 3);
        psamples.push_back({pow_rational(Rational(2), k1), pow_rational(Rational(2), k2),
                            random_vec(rng, 2, 10), random_vec(rng, 2, 10)});
    }
    CHECK(check_q_convexity_ball(pn, QExponent::infinity(), psamples).passed);
    CHECK(check_q_convexity_ball(pn, QExponent::finite(Rational(2)), psamples).passed);
}

TEST_CASE("gauge symmetrization and subadditivity") {
    // N(x) = max(x, 0) on Q^1: N^sym = |x|
    const SeminormRep g(VectorSpaceQn(1, AbsoluteValueSpec::archimedean()),
                        SeminormRep::Gauge{{{Rational(1)}}});
    const SeminormRep sym = symmetrize_gauge(g);
    CHECK(magnitude_eq(eval_seminorm(sym, {Rational(-3)}), Magnitude::of_rational(Rational(3))));
    CHECK(magnitude_eq(eval_seminorm(sym, {Rational(3)}), Magnitude::of_rational(Rational(3))));

    std::mt19937_64 rng(57);
    std::vector<std::pair<Vec, Vec>> pairs;
    for (int trial = 0; trial < 200; ++trial) {
        pairs.emplace_back(random_vec(rng, 2, 30), random_vec(rng, 2, 30));
    }
    const SeminormRep g2(VectorSpaceQn(2, AbsoluteValueSpec::archimedean()),
                         SeminormRep::Gauge{{v2(1, 2), v2(-1, 1)}});
    const GaugeSubadditivityReport rep = check_gauge_subadditive(g2, pairs);
    CHECK(rep.symmetric);
    CHECK(rep.gauge_subadditive);
    CHECK(rep.sym_subadditive);
    CHECK(rep.sym_matches_max);
}

TEST_CASE("seminorm to semimetric bridge") {
    // p-adic max norm on samples: d((0,0),(1/2,0)) = 2
    const SeminormRep pn = coordinate_max(AbsoluteValueSpec::padic(2), 2);
    const std::vector<Vec> pts{v2(0, 0), v2(1, 0), {make_rational(1, 2), Rational(0)}};
    const DistanceMatrix d = seminorm_to_semimetric(pn, pts, {"o", "e1", "h"});
    CHECK(d.at(0, 2) == 2);
    CHECK(d.at(0, 1) == 1);
    CHECK(is_ultrametric(d));
    CHECK(is_ultrametric(d));

    // identical sample points collapse into one zero class
    const DistanceMatrix dd = seminorm_to_semimetric(pn, {v2(1, 1), v2(1, 1)}, {"x", "y"});
    CHECK(zero_partition(dd) == Partition::trivial(2));

    // trivial norm gives the discrete metric on distinct vectors
    const SeminormRep tn(VectorSpaceQn(2, AbsoluteValueSpec::trivial()), SeminormRep::TrivialNorm{});
    const DistanceMatrix dt = seminorm_to_semimetric(tn, pts, {"a", "b", "c"});
    CHECK(dt.at(0, 1) == 1);
    CHECK(dt.at(1, 2) == 1);

    // scaling: d(tv, tw) = |t| d(v, w) on samples
    std::mt19937_64 rng(58);
    const Rational t = make_rational(3, 2);
    for (int trial = 0; trial < 30; ++trial) {
        const Vec v = random_vec(rng, 2, 20);
        const Vec w = random_vec(rng, 2, 20);
        const SeminormRep arch = coordinate_max(AbsoluteValueSpec::archimedean(), 2);
        const Magnitude lhs = eval_seminorm(arch, vec_sub(vec_scale(t, v), vec_scale(t, w)));
        const Magnitude rhs = magnitude_mul(abs_value(AbsoluteValueSpec::archimedean(), t),
                                            eval_seminorm(arch, vec_sub(v, w)));
        CHECK(magnitude_eq(lhs, rhs));
    }

    // power sum bridges through the stored exponent r
    const SeminormRep ps(VectorSpaceQn(2, AbsoluteValueSpec::archimedean()),
                         SeminormRep::PowerSum{{v2(1, 0), v2(0, 1)}, Rational(2)});
    const DistanceMatrix dp = seminorm_to_semimetric(ps, pts, {"a", "b", "c"});
    CHECK(dp.exponent() == 2);
    CHECK(dp.at(0, 1) == 1);  // |1|^2 + 0 = 1
}

TEST_CASE("combining seminorms") {
    const SeminormRep a = coordinate_max(AbsoluteValueSpec::padic(2), 2);
    SeminormRep::MaxFunctionals second;
    second.rows = {v2(1, 1)};
    const SeminormRep b(VectorSpaceQn(2, AbsoluteValueSpec::padic(2)), std::move(second));
    const SeminormRep mx = combine_seminorms_max({a, b});
    REQUIRE(mx.is_max());
    CHECK(mx.max_functionals().rows.size() == 3);

    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec v = random_vec(rng, 2, 20);
        CHECK(magnitude_eq(eval_seminorm(mx, v),
                           magnitude_max(eval_seminorm(a, v), eval_seminorm(b, v))));
    }
    // max of ultranorms stays an ultranorm
    std::vector<std::pair<Vec, Vec>> pairs;
    for (int trial = 0; trial < 100; ++trial)
        pairs.emplace_back(random_vec(rng, 2, 20), random_vec(rng, 2, 20));
    CHECK(check_ultranorm(mx, pairs).passed);

    // single input is the identity
    CHECK(combine_seminorms_max({a}).is_max());

    // power combine with r = 1 over |L1|, |L2| is the sum |L1| + |L2|
    SeminormRep::MaxFunctionals l1, l2;
    l1.rows = {v2(1, 0)};
    l2.rows = {v2(0, 1)};
    const VectorSpaceQn arch2(2, AbsoluteValueSpec::archimedean());
    const SeminormRep s1(arch2, std::move(l1));
    const SeminormRep s2(arch2, std::move(l2));
    const SeminormRep sum = combine_seminorms_power({s1, s2}, Rational(1));
    CHECK(magnitude_eq(eval_seminorm(sum, v2(3, -4)), Magnitude::of_rational(Rational(7))));

    CHECK_THROWS_AS(combine_seminorms_power({a}, Rational(2)), representation_error);
}
