#pragma once

#include <string>

namespace qmet {

// Three-valued outcome of an exactness-aware check.  Inconclusive means
// the interval fallback could not separate the two sides.
enum class Verdict { Holds, Fails, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        default: return "inconclusive";
    }
}

inline Verdict combine_verdicts(Verdict a, Verdict b) {
    if (a == Verdict::Fails || b == Verdict::Fails) return Verdict::Fails;
    if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
    return Verdict::Holds;
}

}  // namespace qmet
