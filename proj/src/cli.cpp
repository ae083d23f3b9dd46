#include "rigidity/cli.hpp"

#include "rigidity/classifier.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/expr.hpp"
#include "rigidity/grading.hpp"
#include "rigidity/mason.hpp"
#include "rigidity/param_oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace rigidity {

namespace {

using Json = nlohmann::ordered_json;

struct Global {
    bool json = false;
    bool deterministic = false;
};

// ---- argument helpers ----

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_assignment(const std::string& s, const char* what) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw InvalidArgument(std::string(what) + " must look like name=value: " + s);
    return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

std::int64_t parse_int(const std::string& s, const char* what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidArgument(std::string("invalid integer for ") + what + ": '" + s + "'");
    return v;
}

std::vector<std::int64_t> parse_int_list(const std::string& s, const char* what) {
    std::vector<std::int64_t> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_int(trim(part), what));
    return out;
}

// Explicit --vars, or X,Y,Z,T truncated to the last one mentioned.
Variables choose_variables(const std::string& explicit_vars, const std::vector<std::string>& texts) {
    if (!explicit_vars.empty()) {
        std::vector<std::string> names;
        for (const auto& n : split(explicit_vars, ',')) names.push_back(trim(n));
        return Variables(names);
    }
    static const std::vector<std::string> defaults{"X", "Y", "Z", "T"};
    std::size_t count = 1;
    for (const auto& t : texts) {
        for (const auto& id : identifiers_in(t)) {
            for (std::size_t k = 0; k < defaults.size(); ++k) {
                if (defaults[k] == id) count = std::max(count, k + 1);
            }
        }
    }
    return Variables(std::vector<std::string>(defaults.begin(), defaults.begin() + static_cast<long>(count)));
}

// ---- JSON helpers ----

Json mpz_json(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Json degree_json(const Degree& d) { return d ? Json(*d) : Json(nullptr); }

Json per_variable(const Variables& vars, const std::vector<Polynomial>& ps) {
    Json out = Json::object();
    for (std::size_t i = 0; i < ps.size(); ++i) out[vars[i]] = format_poly(ps[i]);
    return out;
}

std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::None: return "None";
        case CertificateKind::ByIteration: return "ByIteration";
        case CertificateKind::ByNegativeGrading: return "ByNegativeGrading";
    }
    return "?";
}

Json nilpotency_json(const NilpotencyReport& r, const Variables& vars) {
    Json out;
    out["status"] = r.certified() ? "CertifiedNilpotent" : "Inconclusive";
    out["certificate"] = to_string(r.certificate);
    if (!r.steps_per_generator.empty()) {
        Json steps = Json::object();
        for (std::size_t i = 0; i < r.steps_per_generator.size(); ++i) {
            int s = r.steps_per_generator[i];
            steps[vars[i]] = s < 0 ? Json(nullptr) : Json(s);
        }
        out["steps"] = steps;
        out["max_steps"] = r.certified() ? Json(r.max_steps()) : Json(nullptr);
        out["bound"] = r.bound_used;
    }
    if (r.weights) out["weights"] = r.weights->weights;
    if (r.certificate == CertificateKind::ByNegativeGrading || r.weights) out["jump"] = degree_json(r.jump);
    if (!r.reason.empty()) out["reason"] = r.reason;
    return out;
}

std::vector<Polynomial> image_reps(const Derivation& d) {
    std::vector<Polynomial> out;
    for (const auto& e : d.images()) out.push_back(e.rep());
    return out;
}

// ---- human-readable rendering of a result document ----

void render(std::ostream& os, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        const std::string key = j.is_object() ? it.key() : "-";
        if (v.is_object() && !v.empty()) {
            os << pad << key << ":\n";
            render(os, v, indent + 1);
        } else if (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array())) {
            os << pad << key << ":\n";
            render(os, v, indent + 1);
        } else if (v.is_array() && !v.empty() && v[0].is_string()) {
            os << pad << key << ":\n";
            for (const auto& s : v) os << pad << "  - " << s.get<std::string>() << "\n";
        } else if (v.is_string()) {
            os << pad << key << ": " << v.get<std::string>() << "\n";
        } else {
            os << pad << key << ": " << v.dump() << "\n";
        }
    }
}

// ---- commands ----

struct ClassifyArgs {
    std::string relation;
    std::string vars;
};

Json witness_json(const Derivation& w) {
    const auto& ring = w.presentation();
    const Variables& vars = ring->variables();
    // Re-verify from the printed text, so what is shown is what was checked.
    const std::string rel_text = format_poly(ring->relation());
    auto reparsed_ring = make_presentation(parse_poly(rel_text, vars));
    std::vector<Polynomial> reparsed;
    for (const auto& p : image_reps(w)) reparsed.push_back(parse_poly(format_poly(p), vars));
    Derivation again = [&] {
        try {
            return make_derivation(reparsed_ring, reparsed);
        } catch (const IllDefined&) {
            throw InvariantViolation("printed witness does not re-verify");
        }
    }();
    NilpotencyReport report = probe_nilpotency(again);
    if (again.is_zero() || !report.certified()) throw InvariantViolation("printed witness does not re-verify");

    Json out;
    out["relation"] = rel_text;
    out["images"] = per_variable(vars, reparsed);
    out["well_defined"] = true;
    out["nonzero"] = true;
    out["nilpotency"] = nilpotency_json(report, vars);
    return out;
}

Json cmd_classify(const ClassifyArgs& a) {
    Variables vars = choose_variables(a.vars, {a.relation});
    Polynomial f = parse_poly(a.relation, vars);
    FamilyDescriptor d = recognize_family(f);
    Verdict v = classify(d);
    if (v.status == VerdictStatus::Rigid && catalog_witness(f)) {
        throw InvariantViolation("Rigid verdict on a relation with a catalog witness");
    }
    Json out;
    out["relation"] = format_poly(f);
    out["family"] = to_string(d.family);
    out["exponents"] = d.exponents;
    out["status"] = to_string(v.status);
    out["citation"] = v.citation;
    out["notes"] = v.notes;
    out["witness"] = v.witness ? witness_json(*v.witness) : Json(nullptr);
    return out;
}

struct VerifyArgs {
    std::string relation;
    std::string vars;
    std::vector<std::string> images;
    int probe_bound = kDefaultProbeBound;
    std::string weights;
};

Json cmd_verify_derivation(const VerifyArgs& a) {
    std::vector<std::pair<std::string, std::string>> assigns;
    std::vector<std::string> texts{a.relation};
    for (const auto& s : a.images) {
        assigns.push_back(split_assignment(s, "--image"));
        texts.push_back(assigns.back().first);
        texts.push_back(assigns.back().second);
    }
    Variables vars = choose_variables(a.vars, texts);
    auto ring = make_presentation(parse_poly(a.relation, vars));
    std::vector<Polynomial> images(vars.size(), Polynomial(vars));
    std::vector<bool> given(vars.size(), false);
    for (const auto& [name, text] : assigns) {
        auto idx = vars.find(name);
        if (!idx) throw VariableMismatch("--image names unknown variable '" + name + "'");
        if (given[*idx]) throw InvalidArgument("--image given twice for " + name);
        given[*idx] = true;
        images[*idx] = parse_poly(text, vars);
    }
    RingElement residual = well_definedness_residual(ring, images);

    Json out;
    out["relation"] = format_poly(ring->relation());
    out["images"] = per_variable(vars, images);
    out["well_defined"] = residual.is_zero();
    out["residual"] = format_poly(residual.rep());
    if (!residual.is_zero()) {
        out["nonzero"] = nullptr;
        out["nilpotency"] = nullptr;
        return out;
    }
    Derivation d = make_derivation(ring, images);
    out["nonzero"] = !d.is_zero();
    out["nilpotency"] = nilpotency_json(probe_nilpotency(d, a.probe_bound), vars);
    if (!a.weights.empty()) {
        WeightVector w(parse_int_list(a.weights, "--weights"));
        if (w.size() != vars.size()) throw InvalidArgument("--weights length does not match the variable count");
        try {
            out["negative_grading"] = nilpotency_json(certify_by_negative_grading(d, w), vars);
        } catch (const InvalidArgument& e) {
            out["negative_grading"] = Json{{"error", e.what()}};
        }
        try {
            DegreeJump j = derivation_degree_jump(d, w);
            Json dj;
            dj["d_l"] = j.d_l;
            Json jumps = Json::object();
            for (std::size_t i = 0; i < j.jumps.size(); ++i) jumps[vars[i]] = degree_json(j.jumps[i]);
            dj["jumps"] = jumps;
            dj["gr_relation"] = format_poly(j.graded.gr_relation());
            dj["gr_images"] = per_variable(vars, image_reps(j.gr_derivation));
            out["degree_jump"] = dj;
        } catch (const InvalidArgument& e) {
            out["degree_jump"] = Json{{"error", e.what()}};
        } catch (const Unsupported& e) {
            out["degree_jump"] = Json{{"error", e.what()}};
        }
    }
    return out;
}

struct GrArgs {
    std::string relation;
    std::string vars;
    std::string weights;
};

Json cmd_gr(const GrArgs& a) {
    Variables vars = choose_variables(a.vars, {a.relation});
    auto ring = make_presentation(parse_poly(a.relation, vars));
    WeightVector w(parse_int_list(a.weights, "--weights"));
    if (w.size() != vars.size()) throw InvalidArgument("--weights length does not match the variable count");
    GradedPresentation g = gr_presentation(ring, w);
    Json out;
    out["relation"] = format_poly(ring->relation());
    out["weights"] = w.weights;
    out["top_part"] = format_poly(g.gr_relation());
    out["weighted_degree"] = degree_json(weighted_degree(ring->relation(), w));
    out["homogeneous"] = g.gr_relation() == ring->relation();
    out["irreducible_by_pattern"] = irreducible_by_pattern(g.gr_relation());
    Json comps = Json::array();
    for (const auto& [deg, p] : homogeneous_components(ring->relation(), w)) {
        comps.push_back(Json{{"degree", deg}, {"part", format_poly(p)}});
    }
    out["components"] = comps;
    return out;
}

struct MasonArgs {
    std::string polys;
    std::string var = "S";
};

Json cmd_mason(const MasonArgs& a) {
    Variables vars{a.var};
    std::vector<Polynomial> fs;
    for (const auto& t : split(a.polys, ';')) fs.push_back(parse_poly(t, vars));
    MasonReport r = mason_check(fs);
    Json out;
    Json inputs = Json::array();
    Json roots = Json::array();
    for (const auto& f : fs) {
        inputs.push_back(format_poly(f));
        roots.push_back(f.is_zero() ? Json(nullptr) : Json(distinct_root_count(f)));
    }
    out["polys"] = inputs;
    out["distinct_roots"] = roots;
    out["hypotheses_ok"] = r.hypotheses_ok;
    if (!r.violation.empty()) out["violation"] = r.violation;
    out["max_degree"] = r.max_degree;
    out["bound_product"] = mpz_json(r.bound_product);
    out["bound_sum"] = mpz_json(r.bound_sum);
    out["holds_product"] = r.holds_product;
    out["holds_sum"] = r.holds_sum;
    out["holds"] = r.holds_product && r.holds_sum;
    return out;
}

struct ObstructArgs {
    std::string pattern;
    std::string params;
};

Json cmd_obstruct(const ObstructArgs& a) {
    std::map<std::string, std::int64_t> kv;
    Json params = Json::object();
    if (!trim(a.params).empty()) {
        for (const auto& part : split(a.params, ',')) {
            auto [k, v] = split_assignment(part, "--params");
            if (kv.count(k)) throw InvalidArgument("parameter given twice: " + k);
            kv[k] = parse_int(v, k.c_str());
            params[k] = kv[k];
        }
    }
    auto take = [&](const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end()) throw InvalidArgument("pattern " + a.pattern + " needs parameter " + k);
        std::int64_t v = it->second;
        kv.erase(it);
        return v;
    };
    ObstructionPattern p;
    if (a.pattern == "minimason") {
        auto x = take("a");
        p = MiniMasonParams{x, take("b")};
    } else if (a.pattern == "extended-minimason") {
        auto x = take("a");
        auto y = take("b");
        p = ExtendedMiniMasonParams{x, y, take("degq")};
    } else if (a.pattern == "twisted") {
        auto x = take("a");
        auto y = take("b");
        p = TwistedMasonParams{x, y, take("c")};
    } else if (a.pattern == "doublemason") {
        auto x = take("a");
        auto y = take("b");
        auto z = take("c");
        p = DoubleMasonParams{x, y, z, take("d")};
    } else if (a.pattern == "ex1") {
        Ex1Params e;
        for (int k = 1; kv.count("d" + std::to_string(k)); ++k) e.ds.push_back(take("d" + std::to_string(k)));
        p = e;
    } else {
        throw InvalidArgument("unknown pattern '" + a.pattern +
                              "' (minimason, extended-minimason, twisted, doublemason, ex1)");
    }
    if (!kv.empty()) throw InvalidArgument("unexpected parameter " + kv.begin()->first);
    ObstructionVerdict v = obstruction_check(p);
    Json out;
    out["pattern"] = a.pattern;
    out["params"] = params;
    out["status"] = to_string(v.status);
    out["rule"] = v.rule;
    out["detail"] = v.detail;
    return out;
}

ConstraintKind parse_target(const std::string& t) {
    if (t == "zero") return ConstraintKind::HomogeneousZero;
    if (t == "unit") return ConstraintKind::UnitTarget;
    throw InvalidArgument("--target must be zero or unit");
}

struct ParamVerifyArgs {
    std::string relation;
    std::string vars;
    std::vector<std::string> subs;
    std::string target = "zero";
    std::string param = "S";
};

Json cmd_param_verify(const ParamVerifyArgs& a) {
    std::vector<std::pair<std::string, std::string>> assigns;
    std::vector<std::string> names{a.relation};
    for (const auto& s : a.subs) {
        assigns.push_back(split_assignment(s, "--sub"));
        names.push_back(assigns.back().first);
    }
    Variables vars = choose_variables(a.vars, names);
    ParametrizationProblem prob;
    prob.relation = parse_poly(a.relation, vars);
    prob.constraint = parse_target(a.target);
    Variables s{a.param};
    std::vector<std::optional<Polynomial>> cands(vars.size());
    for (const auto& [name, text] : assigns) {
        auto idx = vars.find(name);
        if (!idx) throw VariableMismatch("--sub names unknown variable '" + name + "'");
        if (cands[*idx]) throw InvalidArgument("--sub given twice for " + name);
        cands[*idx] = parse_poly(text, s);
    }
    std::vector<Polynomial> cs;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!cands[i]) throw InvalidArgument("missing --sub for " + vars[i]);
        cs.push_back(*cands[i]);
    }
    ParametrizationCheck c = verify_parametrization(prob, cs);
    Json out;
    out["relation"] = format_poly(prob.relation);
    out["target"] = a.target;
    out["substitution"] = per_variable(vars, cs);
    out["holds"] = c.holds;
    out["value"] = format_poly(c.value);
    out["residual"] = format_poly(c.residual);
    out["primitive"] = is_primitive(prob, cs);
    return out;
}

struct SearchArgs {
    std::string relation;
    std::string vars;
    std::string max_deg;
    int window = 2;
    std::string target = "zero";
    bool real = false;
    bool primitive = false;
    bool allow_zero = false;
    std::uint64_t ceiling = 10'000'000;
    std::string param = "S";
};

Json cmd_search(const SearchArgs& a) {
    Variables vars = choose_variables(a.vars, {a.relation});
    ParametrizationProblem prob;
    prob.relation = parse_poly(a.relation, vars);
    prob.constraint = parse_target(a.target);
    for (auto d : parse_int_list(a.max_deg, "--max-deg")) {
        if (d < 0) throw InvalidArgument("--max-deg entries must be nonnegative");
        prob.degree_bounds.push_back(static_cast<std::uint32_t>(d));
    }
    prob.primitive_only = a.primitive;
    prob.nonzero_components = !a.allow_zero;
    if (a.window < 0) throw InvalidArgument("--coeff-window must be nonnegative");
    SearchOptions opt;
    opt.window = a.window;
    opt.real_only = a.real;
    opt.ceiling = a.ceiling;
    opt.parameter = a.param;

    Json out;
    out["relation"] = format_poly(prob.relation);
    out["target"] = a.target;
    out["degree_bounds"] = prob.degree_bounds;
    try {
        ObstructionVerdict v = parametrization_obstructed(prob);
        out["obstruction"] = Json{{"status", to_string(v.status)}, {"rule", v.rule}, {"detail", v.detail}};
    } catch (const Unsupported& e) {
        out["obstruction"] = Json{{"status", "Unsupported"}, {"detail", e.what()}};
    }
    SearchResult r = bounded_search(prob, opt);
    out["found"] = r.found;
    out["candidates"] = r.found ? per_variable(vars, r.candidates) : Json(nullptr);
    out["cost"] = r.cost;
    out["strategy"] = r.strategy;
    if (r.found && out["obstruction"]["status"] == "Obstructed") {
        throw InvariantViolation("search found a parametrization for an obstructed problem");
    }
    return out;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const VariableMismatch*>(&e)) return "VariableMismatch";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
    if (dynamic_cast<const NotDivisible*>(&e)) return "NotDivisible";
    if (dynamic_cast<const IllDefined*>(&e)) return "IllDefined";
    if (dynamic_cast<const Unsupported*>(&e)) return "Unsupported";
    if (dynamic_cast<const SearchTooLarge*>(&e)) return "SearchTooLarge";
    if (dynamic_cast<const InvariantViolation*>(&e)) return "InvariantViolation";
    if (dynamic_cast<const std::overflow_error*>(&e)) return "Overflow";
    return "Error";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rigidity toolkit for hypersurface rings C[X1..Xn]/(f)", "rigidity"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_flag("--json", g.json, "Emit the versioned JSON document");
    app.add_flag("--deterministic", g.deterministic, "Omit timing fields so output is byte-stable");

    std::function<Json()> action;
    std::string command;

    ClassifyArgs ca;
    auto* classify_cmd = app.add_subcommand("classify", "Recognize the family and print the rigidity verdict");
    classify_cmd->add_option("--relation", ca.relation, "Relation f")->required();
    classify_cmd->add_option("--vars", ca.vars, "Comma-separated variable list (default X,Y,Z,T truncated)");
    classify_cmd->callback([&] { command = "classify"; action = [&] { return cmd_classify(ca); }; });

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify-derivation", "Check a derivation for well-definedness and nilpotency");
    verify_cmd->add_option("--relation", va.relation, "Relation f")->required();
    verify_cmd->add_option("--vars", va.vars, "Comma-separated variable list");
    verify_cmd->add_option("--image", va.images, "Generator image, e.g. X=3*Z^2 (repeatable; unset images are 0)");
    verify_cmd->add_option("--probe-bound", va.probe_bound, "Iterations per generator")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--weights", va.weights, "Comma-separated weights for the grading checks");
    verify_cmd->callback([&] { command = "verify-derivation"; action = [&] { return cmd_verify_derivation(va); }; });

    GrArgs ga;
    auto* gr_cmd = app.add_subcommand("gr", "Top part of f and the graded presentation for a weight vector");
    gr_cmd->add_option("--relation", ga.relation, "Relation f")->required();
    gr_cmd->add_option("--vars", ga.vars, "Comma-separated variable list");
    gr_cmd->add_option("--weights", ga.weights, "Comma-separated weights")->required();
    gr_cmd->callback([&] { command = "gr"; action = [&] { return cmd_gr(ga); }; });

    MasonArgs ma;
    auto* mason_cmd = app.add_subcommand("mason", "Check Mason's inequality for polynomials summing to zero");
    mason_cmd->add_option("--polys", ma.polys, "Semicolon-separated univariate polynomials")->required();
    mason_cmd->add_option("--var", ma.var, "Variable name");
    mason_cmd->callback([&] { command = "mason"; action = [&] { return cmd_mason(ma); }; });

    ObstructArgs oa;
    auto* obstruct_cmd = app.add_subcommand("obstruct", "Evaluate a parametrization obstruction inequality");
    obstruct_cmd->add_option("--pattern", oa.pattern, "minimason, extended-minimason, twisted, doublemason, ex1")
        ->required();
    obstruct_cmd->add_option("--params", oa.params, "k=v list, e.g. a=3,b=2,c=3,d=6 or d1=2,d2=3,d3=7");
    obstruct_cmd->callback([&] { command = "obstruct"; action = [&] { return cmd_obstruct(oa); }; });

    ParamVerifyArgs pa;
    auto* pv_cmd = app.add_subcommand("param-verify", "Substitute univariate polynomials into the relation");
    pv_cmd->add_option("--relation", pa.relation, "Relation P")->required();
    pv_cmd->add_option("--vars", pa.vars, "Comma-separated variable list");
    pv_cmd->add_option("--sub", pa.subs, "Substitution, e.g. X=S*(S^3+1) (one per variable)")->required();
    pv_cmd->add_option("--target", pa.target, "zero (P = 0) or unit (P a nonzero constant)");
    pv_cmd->add_option("--param", pa.param, "Parameter variable name");
    pv_cmd->callback([&] { command = "param-verify"; action = [&] { return cmd_param_verify(pa); }; });

    SearchArgs sa;
    auto* search_cmd = app.add_subcommand("search", "Bounded search for a polynomial parametrization");
    search_cmd->add_option("--relation", sa.relation, "Relation P")->required();
    search_cmd->add_option("--vars", sa.vars, "Comma-separated variable list");
    search_cmd->add_option("--max-deg", sa.max_deg, "Comma-separated degree bound per variable")->required();
    search_cmd->add_option("--coeff-window", sa.window, "Coefficients a+bi with |a|,|b| <= w");
    search_cmd->add_option("--target", sa.target, "zero (P = 0) or unit (P a nonzero constant)");
    search_cmd->add_flag("--real-coeffs", sa.real, "Integer coefficients only");
    search_cmd->add_flag("--primitive", sa.primitive, "Only tuples meeting Mason's coprimality hypothesis");
    search_cmd->add_flag("--allow-zero-components", sa.allow_zero, "Allow zero components");
    search_cmd->add_option("--ceiling", sa.ceiling, "Largest candidate count before giving up");
    search_cmd->add_option("--param", sa.param, "Parameter variable name");
    search_cmd->callback([&] { command = "search"; action = [&] { return cmd_search(sa); }; });

    Json doc;
    doc["schema_version"] = kSchemaVersion;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        bool wants_json = false;
        for (int i = 1; i < argc; ++i) wants_json = wants_json || std::string(argv[i]) == "--json";
        if (!wants_json) {
            app.exit(e, out, err);
            return 1;
        }
        doc["command"] = app.get_subcommands().empty() ? "" : app.get_subcommands()[0]->get_name();
        doc["error"] = Json{{"kind", "UsageError"}, {"message", e.what()}};
        out << doc.dump(2) << "\n";
        return 1;
    }

    doc["command"] = command;
    int code = 0;
    const auto start = std::chrono::steady_clock::now();
    try {
        doc["result"] = action();
    } catch (const std::exception& e) {
        const std::string kind = error_kind(e);
        code = kind == "InvariantViolation" ? 2 : 1;
        doc["error"] = Json{{"kind", kind}, {"message", e.what()}};
    }
    if (!g.deterministic) {
        std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
        doc["elapsed_ms"] = std::round(ms.count() * 1000.0) / 1000.0;
    }

    if (g.json) {
        out << doc.dump(2) << "\n";
    } else if (doc.contains("error")) {
        err << "error (" << doc["error"]["kind"].get<std::string>()
            << "): " << doc["error"]["message"].get<std::string>() << "\n";
    } else {
        render(out, doc["result"], 0);
        if (doc.contains("elapsed_ms")) out << "elapsed_ms: " << doc["elapsed_ms"].dump() << "\n";
    }
    return code;
}

}  // namespace rigidity
