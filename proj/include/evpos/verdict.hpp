#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evpos/laurent.hpp"

namespace evpos {

enum class VerdictStatus { CertifiedTrue, CounterexampleFound, Inconclusive };

std::string to_string(VerdictStatus s);

struct Witness {
    std::string kind;
    std::vector<Complex> point;       // complex point over rays or chart coords
    std::vector<Complex> point_b;     // second point for pairwise witnesses
    std::vector<double> real_point;   // real point when that is the natural datum
    ExponentVector lattice_point;     // failing exponent for coefficient checks
    std::string exact_value;          // exact rational value when available
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    int cone = -1;
    int ray = -1;
    bool equality_type = false;
    double orbit_residual = -1.0;
};

struct VerdictStats {
    long long samples = 0;
    int restarts = 0;
    double best_margin = 0.0;  // most adversarial value seen (check-specific)
    bool best_margin_set = false;
    long long skipped_excluded = 0;
    long long near_orbit_discards = 0;
    long long borderline = 0;
    int certified_parts = 0;
    int total_parts = 0;
    std::string note;

    void observe_margin(double m) {
        if (!best_margin_set || m < best_margin) {
            best_margin = m;
            best_margin_set = true;
        }
    }
    void observe_margin_max(double m) {
        if (!best_margin_set || m > best_margin) {
            best_margin = m;
            best_margin_set = true;
        }
    }
};

// Trichotomy result of a semi-decision check.  CertifiedTrue always carries a
// human-readable certificate; CounterexampleFound always carries a witness
// that was re-verified before being reported.
struct Verdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::string certificate;
    std::optional<Witness> witness;
    VerdictStats stats;
};

}  // namespace evpos
