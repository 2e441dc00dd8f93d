#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "evpos/family.hpp"
#include "evpos/markov.hpp"
#include "evpos/parser.hpp"
#include "evpos/report.hpp"

namespace {

using namespace evpos;

struct CommonArgs {
    std::string expr;
    std::string vars_csv;
    std::string family;
    int ell = 2;
    std::string lambda1 = "7";
    std::string lambda2 = "7";
    bool pretty = false;
};

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string::npos) comma = csv.size();
        std::string item = csv.substr(start, comma - start);
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.push_back(item);
        start = comma + 1;
    }
    return out;
}

Rational parse_rational_literal(const std::string& text) {
    LaurentPolynomial c = parse_polynomial(text, {});
    return c.coefficient(ExponentVector{});
}

// Resolves the polynomial input: either an expression (with explicit or
// inferred variables) or the built-in two-parameter family.
LaurentPolynomial resolve_input(const CommonArgs& a, std::vector<std::string>& variables) {
    if (!a.family.empty()) {
        if (a.family != "plambda")
            throw std::invalid_argument("unknown family '" + a.family + "' (expected: plambda)");
        if (!a.expr.empty())
            throw std::invalid_argument("give either an expression or --family, not both");
        variables = {"x1", "x2"};
        return make_family_product(a.ell, parse_rational_literal(a.lambda1),
                                   parse_rational_literal(a.lambda2));
    }
    if (a.expr.empty()) throw std::invalid_argument("no input expression");
    variables = a.vars_csv.empty() ? collect_identifiers(a.expr) : split_csv(a.vars_csv);
    if (variables.empty()) variables = {"x1"};
    return parse_polynomial(a.expr, variables);
}

void emit(const nlohmann::json& j, bool pretty) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

nlohmann::json facets_to_json(const std::vector<Facet>& facets) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : facets) out.push_back({{"normal", f.normal}, {"offset", f.offset}});
    return out;
}

int cmd_analyze(const CommonArgs& a, const SamplerConfig& cfg, bool timings) {
    std::vector<std::string> variables;
    LaurentPolynomial p = resolve_input(a, variables);
    PositivityReport r = analyze(p, variables, cfg, timings);
    emit(report_to_json(r), a.pretty);
    return 0;
}

int cmd_powers(const CommonArgs& a, int k) {
    std::vector<std::string> variables;
    LaurentPolynomial p = resolve_input(a, variables);
    if (k < 0) throw std::invalid_argument("the power must be nonnegative");

    LaurentPolynomial q = LaurentPolynomial::constant(p.nvars(), 1);
    for (int i = 0; i < k; ++i) q = q * p;

    nlohmann::json j;
    j["k"] = k;
    j["expression"] = format_polynomial(q, variables);
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [m, c] : q.terms())
        coeffs.push_back({{"exponent", m}, {"value", rational_to_string(c)}});
    j["coefficients"] = coeffs;

    FullyPositiveResult fp = is_fully_positive(q);
    j["fully_positive"] = fp.fully_positive;
    j["first_failing"] = fp.first_failing ? nlohmann::json(*fp.first_failing) : nlohmann::json();
    j["lattice_point_count"] = fp.lattice_point_count;
    emit(j, a.pretty);
    return 0;
}

int cmd_polytope(const CommonArgs& a) {
    std::vector<std::string> variables;
    LaurentPolynomial p = resolve_input(a, variables);
    LatticePolytope P = newton_polytope(p);

    nlohmann::json j;
    j["ambient_dimension"] = p.nvars();
    j["dimension"] = P.affine_dimension();
    j["facets"] = facets_to_json(P.facets());
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : P.vertices()) vertices.push_back(v);
    j["vertices"] = vertices;
    auto pts = P.lattice_points();
    j["lattice_point_count"] = pts.size();
    nlohmann::json lattice = nlohmann::json::array();
    for (const auto& m : pts) lattice.push_back(m);
    j["lattice_points"] = lattice;
    auto obstruction = P.smoothness_obstruction();
    j["smooth"] = !obstruction.has_value();
    emit(j, a.pretty);
    return 0;
}

int cmd_fan(const CommonArgs& a) {
    std::vector<std::string> variables;
    LaurentPolynomial p = resolve_input(a, variables);
    NormalFan fan = build_normal_fan(newton_polytope(p));

    nlohmann::json j;
    j["dimension"] = fan.dimension();
    j["rays"] = facets_to_json(fan.rays());
    nlohmann::json cones = nlohmann::json::array();
    for (const auto& c : fan.cones())
        cones.push_back({{"vertex", c.vertex}, {"rays", c.rays}});
    j["cones"] = cones;
    RelationLattice rel = relation_lattice(fan);
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& row : rel.basis) basis.push_back(row);
    j["relation_basis"] = basis;
    emit(j, a.pretty);
    return 0;
}

int cmd_homogenize(const CommonArgs& a) {
    std::vector<std::string> variables;
    LaurentPolynomial p = resolve_input(a, variables);
    HomogenizedPolynomial hp = homogenize(p);

    nlohmann::json j;
    j["rays"] = facets_to_json(hp.fan().rays());
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : hp.terms())
        terms.push_back({{"point", t.point},
                         {"coefficient", rational_to_string(t.coeff)},
                         {"exponents", t.exponents}});
    j["terms"] = terms;
    emit(j, a.pretty);
    return 0;
}

int cmd_markov(const std::string& matrix_file, const std::string& beta_expr,
               const std::string& at_csv, const std::string& vars_csv, double tol,
               std::uint64_t seed, bool pretty) {
    std::ifstream in(matrix_file);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + matrix_file);
    nlohmann::json m = nlohmann::json::parse(in);
    if (!m.is_array() || m.empty())
        throw std::invalid_argument("matrix file must hold a nonempty 2-D array of expressions");

    std::vector<std::vector<std::string>> raw;
    for (const auto& row : m) {
        if (!row.is_array())
            throw std::invalid_argument("matrix file must hold a nonempty 2-D array of expressions");
        std::vector<std::string> r;
        for (const auto& cell : row) {
            if (!cell.is_string())
                throw std::invalid_argument("matrix entries must be expression strings");
            r.push_back(cell.get<std::string>());
        }
        raw.push_back(std::move(r));
    }

    std::vector<std::string> variables;
    if (!vars_csv.empty()) {
        variables = split_csv(vars_csv);
    } else {
        std::string joined = beta_expr;
        for (const auto& row : raw)
            for (const auto& cell : row) joined += (joined.empty() ? "" : "+") + cell;
        variables = collect_identifiers(joined);
    }

    std::vector<std::vector<LaurentPolynomial>> entries;
    for (const auto& row : raw) {
        std::vector<LaurentPolynomial> r;
        for (const auto& cell : row) r.push_back(parse_polynomial(cell, variables));
        entries.push_back(std::move(r));
    }
    PolyMatrix A = PolyMatrix::from_entries(std::move(entries));

    nlohmann::json j;
    j["size"] = A.size();
    j["variables"] = variables;
    bool irr = is_irreducible(A);
    j["irreducible"] = irr;
    j["aperiodic"] = irr ? nlohmann::json(is_aperiodic(A)) : nlohmann::json();

    if (!at_csv.empty()) {
        std::vector<double> x;
        for (const auto& item : split_csv(at_csv)) x.push_back(std::stod(item));
        SpectralRadiusResult sr = spectral_radius_at(A, x);
        j["spectral_radius"] = {{"point", x},
                                {"value", sr.value},
                                {"converged", sr.converged},
                                {"iterations", sr.iterations},
                                {"gershgorin", {sr.gershgorin_lower, sr.gershgorin_upper}}};
    }

    if (!beta_expr.empty()) {
        LaurentPolynomial beta = parse_polynomial(beta_expr, variables);
        Verdict v = verify_beta_equals(A, beta, 100, tol, seed);
        j["beta_check"] = verdict_to_json(v);
    }
    emit(j, pretty);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decides whether all large powers of a Laurent polynomial have fully positive coefficients"};
    app.require_subcommand(1);

    CommonArgs args;
    SamplerConfig cfg;
    bool timings = false;
    bool ambient = false;
    int power_k = 1;
    std::string matrix_file, beta_expr, at_csv;
    double markov_tol = 1e-10;

    auto add_input_options = [&](CLI::App* sub, bool with_family) {
        sub->add_option("expr", args.expr, "polynomial expression");
        sub->add_option("--vars", args.vars_csv, "comma-separated variable names (default: inferred)");
        sub->add_flag("--pretty", args.pretty, "indented JSON output");
        if (with_family) {
            sub->add_option("--family", args.family, "built-in family name (plambda)");
            sub->add_option("--ell", args.ell, "family degree parameter");
            sub->add_option("--lambda1", args.lambda1, "first family coefficient (rational)");
            sub->add_option("--lambda2", args.lambda2, "second family coefficient (rational)");
        }
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "run the full positivity pipeline");
    add_input_options(analyze_cmd, true);
    analyze_cmd->add_option("--kmax", cfg.k_max, "largest power in the threshold scan");
    analyze_cmd->add_option("--seed", cfg.seed, "random seed");
    analyze_cmd->add_option("--samples", cfg.sample_count, "samples per randomized check");
    analyze_cmd->add_option("--restarts", cfg.restart_count, "multistart count per search");
    analyze_cmd->add_option("--eps", cfg.eps, "tolerance for the randomized checks");
    analyze_cmd->add_option("--power-budget", cfg.power_budget,
                            "coefficient-multiplication budget for the power scan");
    analyze_cmd->add_flag("--ambient", ambient, "sample ambient ray coordinates too");
    analyze_cmd->add_flag("--timings", timings, "include wall-clock timings (non-deterministic)");

    CLI::App* powers_cmd = app.add_subcommand("powers", "expand one power and test its coefficients");
    add_input_options(powers_cmd, true);
    powers_cmd->add_option("k,--k", power_k, "the power to expand")->required();

    CLI::App* polytope_cmd = app.add_subcommand("polytope", "Newton polytope facets and vertices");
    add_input_options(polytope_cmd, true);
    CLI::App* fan_cmd = app.add_subcommand("fan", "normal fan rays, cones, and relation lattice");
    add_input_options(fan_cmd, true);
    CLI::App* homog_cmd = app.add_subcommand("homogenize", "term table of the homogenization");
    add_input_options(homog_cmd, true);

    CLI::App* markov_cmd = app.add_subcommand("markov", "matrix over nonnegative integer polynomials");
    markov_cmd->add_option("--matrix", matrix_file, "JSON file: 2-D array of expression strings")
        ->required();
    markov_cmd->add_option("--check-beta", beta_expr, "polynomial the spectral radius should equal");
    markov_cmd->add_option("--at", at_csv, "comma-separated positive point for one evaluation");
    markov_cmd->add_option("--vars", args.vars_csv, "comma-separated variable names");
    markov_cmd->add_option("--tol", markov_tol, "relative tolerance for the beta comparison");
    markov_cmd->add_option("--seed", cfg.seed, "random seed");
    markov_cmd->add_flag("--pretty", args.pretty, "indented JSON output");

    CLI11_PARSE(app, argc, argv);

    cfg.chart_only = !ambient;

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(args, cfg, timings);
        if (powers_cmd->parsed()) return cmd_powers(args, power_k);
        if (polytope_cmd->parsed()) return cmd_polytope(args);
        if (fan_cmd->parsed()) return cmd_fan(args);
        if (homog_cmd->parsed()) return cmd_homogenize(args);
        if (markov_cmd->parsed())
            return cmd_markov(matrix_file, beta_expr, at_csv, args.vars_csv, markov_tol, cfg.seed,
                              args.pretty);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonSmoothError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const EvaluationDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
