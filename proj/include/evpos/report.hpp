#pragma once

#include <json.hpp>

#include "evpos/analysis.hpp"
#include "evpos/positivity.hpp"

namespace evpos {

struct AnalysisSection {
    bool ran = false;
    std::string skip_reason;
    std::vector<Verdict> chart_positive_definite;  // one per maximal cone
    std::vector<Verdict> chart_properties;         // monotonicity and log-convexity per cone
    Verdict pairwise_bound;
    double hessian_consistency = 0.0;
};

struct PositivityReport {
    std::string input;
    std::vector<std::string> variables;
    SamplerConfig config;

    int dimension = 0;
    std::vector<Facet> facets;
    std::vector<ExponentVector> vertices;
    int ray_count = 0;
    int cone_count = 0;

    FullyPositiveResult fully_positive;

    long long functional_equation_pairs = 0;
    double functional_equation_max_residual = 0.0;

    Verdict pos1;
    std::vector<Rational> vertex_vals;
    Verdict pos2;
    Verdict pos3;
    Verdict orthant;

    PowerPositivityResult powers;

    AnalysisSection analysis;

    std::vector<std::string> flags;
    bool conflict = false;

    std::vector<std::pair<std::string, double>> timings;  // filled only on request
};

// Full pipeline: polytope, fan, homogenization, the positivity checks, the
// power scan, and the convexity follow-ups when nothing was refuted.
// Propagates DegenerateInputError / NonSmoothError from the geometry stage.
PositivityReport analyze(const LaurentPolynomial& p, const std::vector<std::string>& variables,
                         const SamplerConfig& cfg, bool with_timings = false);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json report_to_json(const PositivityReport& r);

}  // namespace evpos
