#include "mns/commands.hpp"

#include "mns/builtin.hpp"
#include "mns/config.hpp"
#include "mns/errors.hpp"
#include "mns/number_system.hpp"
#include "mns/sofic.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

namespace mns {

using nlohmann::json;

namespace {

json complex_json(cplx z) {
    return {number(z.real()), number(z.imag())};
}

json arcs_json(const ArcSet& s) {
    json out = json::array();
    for (const auto& a : s.arcs())
        out.push_back({{"from", a.start()}, {"to", wrap_angle(a.end())}, {"length", a.length()}});
    return out;
}

json closed_json(const ClosedArcSet& s) {
    if (s.is_full())
        return json::array({{{"from", 0.0}, {"to", two_pi}, {"length", two_pi}}});
    json out = json::array();
    for (const auto& p : s.pieces())
        out.push_back({{"from", p.start}, {"to", wrap_angle(p.end())}, {"length", p.length}});
    return out;
}

json words_json(const Alphabet& alphabet, const std::vector<Word>& words, bool unicode) {
    json out = json::array();
    for (const auto& w : words)
        out.push_back(alphabet.format(w, unicode));
    return out;
}

Word parse_word(const NumberSystemSpec& spec, const std::string& text) {
    if (text.empty() || text == "-" || text == "lambda")
        return {};
    return spec.alphabet.parse(text);
}

json transform_json(const DiscMoebius& f) {
    return {{"alpha", complex_json(f.alpha())}, {"beta", complex_json(f.beta())}};
}

json compatibility_json(const CompatibilityReport& r, const Alphabet& alphabet, bool unicode) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"word", alphabet.format(v.word, unicode)}, {"gaps", arcs_json(v.gaps)}});
    return {{"passed", r.passed}, {"checked_words", r.checked}, {"violations", violations}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write " + path);
    out << text;
}

} // namespace

json number(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return x;
}

json make_report(const std::string& command) {
    return {{"version", report_version}, {"command", command}, {"warnings", json::array()}};
}

NumberSystemSpec load_system(const SystemSource& source) {
    if (source.builtin.empty() == source.path.empty())
        throw ConfigError("give exactly one of --builtin or --system");
    if (!source.builtin.empty())
        return builtin_spec(source.builtin);
    return build_spec(load_config(source.path));
}

CommandResult cmd_classify(const NumberSystemSpec& spec, const ClassifyArgs& args) {
    IntervalSystem system(spec);
    const Word w = parse_word(spec, args.word);
    const DiscMoebius f = system.transform(w);
    const MoebiusClass c = classify(f);
    const KAKDecomposition k = decompose(f);

    json result;
    result["word"] = spec.alphabet.format(w, args.unicode);
    result["transform"] = transform_json(f);
    result["class"] = to_string(c.kind);
    result["trace_squared"] = c.trace_squared;
    json fixed = json::array();
    for (const auto& p : c.boundary)
        fixed.push_back({{"angle", p.point.angle()},
                         {"point", complex_json(p.point.to_complex())},
                         {"stability", to_string(p.stability)},
                         {"derivative", f.derivative_modulus(p.point)}});
    result["boundary_fixed_points"] = fixed;
    if (c.interior)
        result["interior_fixed_point"] = complex_json(*c.interior);
    result["decomposition"] = {{"phi1", k.phi1}, {"r", k.r}, {"phi2", k.phi2}};
    if (!f.is_rotation()) {
        const ExpansionGeometry g = expansion_geometry(f);
        result["expansion"] = {{"center", complex_json(g.center)},
                               {"radius", g.radius},
                               {"v_interval", arcs_json(g.v_interval)},
                               {"u_interval", arcs_json(g.u_interval)}};
    }
    json report = make_report("classify");
    report["system"] = spec.name;
    report["inputs"] = {{"word", args.word}};
    report["result"] = result;
    return {report, exit_ok};
}

CommandResult cmd_verify(const NumberSystemSpec& spec, const VerifyArgs& args) {
    IntervalSystem system(spec);
    VerifyRequest request;
    request.n_max = args.n_max;
    for (const auto& b : args.prefix_set)
        request.prefixes.push_back(parse_word(spec, b));
    if (args.qn) {
        request.mode = VerifyRequest::Mode::qn;
        request.n = *args.qn;
    } else if (!args.prefix_set.empty()) {
        request.mode = VerifyRequest::Mode::prefix_set;
    }
    const Verdict v = verify(system, request);

    json result;
    result["status"] = to_string(v.status);
    json evidence = json::object();
    if (v.n)
        evidence["n"] = *v.n;
    if (v.q_value)
        evidence["Q_n"] = number(*v.q_value);
    if (!v.prefixes.empty())
        evidence["prefix_set"] = words_json(spec.alphabet, v.prefixes, args.unicode);
    result["evidence"] = evidence;
    if (v.compatibility)
        result["compatibility"] = compatibility_json(*v.compatibility, spec.alphabet, args.unicode);
    if (v.prefix_report) {
        json excess = json::array();
        for (const auto& [b, set] : v.prefix_report->excess)
            excess.push_back({{"prefix", spec.alphabet.format(b, args.unicode)}, {"outside_expansion", arcs_json(set)}});
        result["prefix_check"] = {
            {"passed", v.prefix_report->passed},
            {"words_without_prefix", words_json(spec.alphabet, v.prefix_report->missing_prefix, args.unicode)},
            {"containment_failures", excess},
            {"rotations", words_json(spec.alphabet, v.prefix_report->rotations, args.unicode)}};
    }
    json report = make_report("verify");
    report["system"] = spec.name;
    json inputs = {{"n_max", args.n_max}, {"strict", args.strict}};
    inputs["mode"] = args.qn ? "qn" : args.prefix_set.empty() ? "auto" : "prefix_set";
    if (args.qn)
        inputs["qn"] = *args.qn;
    if (!args.prefix_set.empty())
        inputs["prefix_set"] = args.prefix_set;
    report["inputs"] = inputs;
    report["result"] = result;
    report["warnings"] = v.warnings;
    const bool ok = v.status != VerifyStatus::inconclusive;
    return {report, ok || !args.strict ? exit_ok : exit_failed};
}

CommandResult cmd_encode(const NumberSystemSpec& spec, const EncodeArgs& args) {
    IntervalSystem system(spec);
    const Word w = parse_word(spec, args.word);
    const EncodeResult r = encode(system, w, args.tol, args.digits.value_or(unlimited_digits));
    json result = {{"point", {{"angle", r.point.angle()}, {"complex", complex_json(r.point.to_complex())}}},
                   {"error_radius", number(r.error_radius)},
                   {"digits_consumed", r.digits_consumed},
                   {"converged", r.converged}};
    const SpherePoint real = circle_to_real(r.point.to_complex());
    result["point"]["real"] = real.is_infinite() ? json("inf") : number(real.value().real());
    json report = make_report("encode");
    report["system"] = spec.name;
    report["inputs"] = {{"word", spec.alphabet.format(w, args.unicode)}, {"tol", args.tol}};
    if (args.digits)
        report["inputs"]["digits"] = *args.digits;
    report["result"] = result;
    if (!r.converged)
        report["warnings"].push_back("digits exhausted before the error radius reached the tolerance");
    return {report, exit_ok};
}

CommandResult cmd_decode(const NumberSystemSpec& spec, const DecodeArgs& args) {
    if (args.theta.has_value() == args.real.has_value())
        throw ConfigError("give exactly one of --theta or --real");
    IntervalSystem system(spec);
    const CirclePoint x = args.theta ? CirclePoint(*args.theta) : CirclePoint::from_complex(real_to_circle(*args.real));
    json report = make_report("decode");
    report["system"] = spec.name;
    report["inputs"] = {{"digits", args.digits}, {"tol", args.tol}};
    if (args.theta)
        report["inputs"]["theta"] = *args.theta;
    else
        report["inputs"]["real"] = *args.real;
    try {
        const Word w = decode(system, x, args.digits);
        const EncodeResult back = encode(system, w, args.tol);
        report["result"] = {{"word", spec.alphabet.format(w, args.unicode)},
                            {"angle", x.angle()},
                            {"round_trip",
                             {{"angle", back.point.angle()},
                              {"error_radius", number(back.error_radius)},
                              {"circle_distance", circle_distance(back.point, x)}}}};
        return {report, exit_ok};
    } catch (const NoLegalDigit& e) {
        report["result"] = {{"error", e.what()}, {"position", e.position}, {"local_angle", e.angle}};
        return {report, exit_failed};
    }
}

CommandResult cmd_qn(const NumberSystemSpec& spec, const QnArgs& args) {
    IntervalSystem system(spec);
    const QEstimate est = system.Q_estimate(args.max_n);
    json table = json::array();
    for (std::size_t n = 0; n < est.table.size(); ++n) {
        const double q = est.table[n];
        json row = {{"n", n}, {"Q_n", number(q)}};
        row["root"] = n == 0 ? json(nullptr) : number(std::pow(q, 1.0 / static_cast<double>(n)));
        table.push_back(row);
    }
    json report = make_report("qn");
    report["system"] = spec.name;
    report["inputs"] = {{"max_n", args.max_n}};
    report["result"] = {{"table", table},
                        {"lower_bound", number(est.lower_bound)},
                        {"n_achieving", est.n_achieving}};
    report["warnings"] = est.warnings;
    return {report, exit_ok};
}

CommandResult cmd_sofic(const NumberSystemSpec& spec, const SoficArgs& args) {
    IntervalSystem system(spec);
    const ZAutomaton aut = build_automaton(system, args.cap, args.eps);
    const SoficReport r = sofic_verdict(system, aut);
    json result = {{"sofic", r.sofic},
                   {"verdict", r.verdict},
                   {"state_count", r.state_count},
                   {"saturated", aut.saturated},
                   {"growth", r.growth},
                   {"transition_residual", r.residual}};
    if (r.product)
        result["product_states"] = r.product->states.size();
    json states = json::array();
    for (std::size_t s = 0; s < aut.states.size(); ++s) {
        json next = json::object();
        for (Symbol a = 0; a < aut.symbols; ++a) {
            const long t = aut.next(s, a);
            next[spec.alphabet.display(a, args.unicode)] = t == ZAutomaton::missing ? json(nullptr) : json(t);
        }
        states.push_back({{"id", s}, {"set", arcs_json(aut.states[s])}, {"next", next}});
    }
    result["states"] = states;
    if (!args.table_path.empty())
        write_file(args.table_path, transition_table(aut, spec.alphabet, args.unicode));
    if (!args.dot_path.empty())
        write_file(args.dot_path, to_dot(aut, spec.alphabet, args.unicode));
    json report = make_report("sofic");
    report["system"] = spec.name;
    report["inputs"] = {{"cap", args.cap}, {"eps", args.eps}, {"strict", args.strict}};
    report["result"] = result;
    return {report, r.sofic || !args.strict ? exit_ok : exit_failed};
}

CommandResult cmd_existence_map(const ExistenceArgs& args) {
    GridProgress progress;
    if (args.progress)
        progress = [](std::size_t done, std::size_t total) {
            std::cerr << "\r" << done << "/" << total << std::flush;
            if (done == total)
                std::cerr << "\n";
        };
    const CoverageGrid grid =
        render_grid(args.rect, args.width, args.height, args.depth, args.n_max, args.threads, progress);
    json report = make_report("existence-map");
    report["inputs"] = {{"resolution", {args.width, args.height}},
                        {"depth", args.depth},
                        {"n_max", args.n_max},
                        {"rect", {args.rect.qa_min, args.rect.qb_min, args.rect.qa_max, args.rect.qb_max}}};
    report["result"] = summary(grid);
    if (!args.out_path.empty()) {
        const std::string& p = args.out_path;
        if (p.ends_with(".pgm"))
            write_file(p, to_pgm(grid));
        else if (p.ends_with(".csv"))
            write_file(p, to_csv(grid));
        else if (p.ends_with(".json"))
            write_file(p, summary(grid).dump(2) + "\n");
        else
            throw ConfigError("output file must end in .pgm, .csv or .json");
        report["result"]["written"] = p;
    }
    if (grid.fraction(CellLabel::cover) + grid.fraction(CellLabel::inward) < 0.9)
        report["warnings"].push_back("cover and inward cells make up less than 90% of the grid");
    if (grid.dual_labelled > 0) {
        report["warnings"].push_back(std::to_string(grid.dual_labelled) + " cells satisfy both predicates");
        return {report, exit_failed};
    }
    return {report, exit_ok};
}

CommandResult cmd_export(const NumberSystemSpec& spec, const std::string& out_path) {
    json report = make_report("export");
    report["system"] = spec.name;
    const json config = to_json(export_config(spec));
    if (out_path.empty()) {
        report["result"] = config;
    } else {
        write_file(out_path, config.dump(2) + "\n");
        report["result"] = {{"written", out_path}};
    }
    return {report, exit_ok};
}

} // namespace mns
