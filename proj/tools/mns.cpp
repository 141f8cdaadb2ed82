// Command-line front end: every subcommand prints one JSON report.
#include "mns/commands.hpp"
#include "mns/config.hpp"
#include "mns/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using mns::CommandResult;
using nlohmann::json;

struct Globals {
    bool unicode = false;
    bool timings = false;
    std::string out;
};

void add_system_options(CLI::App* cmd, mns::SystemSource& source) {
    auto* b = cmd->add_option("--builtin", source.builtin, "parabolic3, cf, binary or hyperbolic4");
    auto* s = cmd->add_option("--system", source.path, "system description (JSON)");
    b->excludes(s);
}

double parse_angle_arg(const std::string& text) {
    json value;
    if (text.starts_with("pi") || text.starts_with("-pi"))
        value = text;
    else
        value = json::parse(text);
    return mns::parse_angle(value, "angle");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

mns::ParamRect parse_rect(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4)
        throw mns::ConfigError("--rect expects qa_min,qb_min,qa_max,qb_max");
    return {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]), std::stod(parts[3])};
}

std::pair<std::size_t, std::size_t> parse_resolution(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos)
        throw mns::ConfigError("--res expects <width>x<height>");
    return {std::stoul(text.substr(0, x)), std::stoul(text.substr(x + 1))};
}

int emit(const std::string& command, CommandResult result, const Globals& g, double elapsed_ms) {
    if (g.timings)
        result.report["timings"] = {{"elapsed_ms", elapsed_ms}};
    const std::string text = result.report.dump(2) + "\n";
    // existence-map and export write their own artifacts to --out.
    if (!g.out.empty() && command != "existence-map" && command != "export") {
        std::ofstream out(g.out);
        if (!out) {
            std::cerr << "cannot write " << g.out << "\n";
            return mns::exit_input;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return result.exit_code;
}

int report_error(const std::string& command, const std::string& type, const std::string& message, int code) {
    json report = mns::make_report(command);
    report["error"] = {{"type", type}, {"message", message}};
    std::cout << report.dump(2) << "\n";
    std::cerr << "error: " << message << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moebius number systems on the unit circle"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--unicode", g.unicode, "print barred symbols with a combining macron");
    app.add_flag("--timings", g.timings, "include elapsed time in the report");
    app.add_option("--out", g.out, "write the report (or the command's artifact) to a file");

    mns::SystemSource source;

    auto* classify = app.add_subcommand("classify", "class, fixed points and geometry of F_v");
    add_system_options(classify, source);
    mns::ClassifyArgs classify_args;
    classify->add_option("--word,word", classify_args.word, "symbol or word")->required();

    auto* verify = app.add_subcommand("verify", "check the number-system criteria");
    add_system_options(verify, source);
    mns::VerifyArgs verify_args;
    std::string prefix_set;
    bool auto_mode = false;
    auto* qn_opt = verify->add_option("--qn", verify_args.qn, "use Q_n for this n");
    auto* prefix_opt = verify->add_option("--prefix-set", prefix_set, "comma-separated prefix words");
    auto* auto_opt = verify->add_flag("--auto", auto_mode, "try Q_1..Q_nmax, then the prefix set if given");
    qn_opt->excludes(prefix_opt);
    qn_opt->excludes(auto_opt);
    verify->add_option("--nmax", verify_args.n_max, "largest n tried in automatic mode");
    verify->add_flag("--strict", verify_args.strict, "exit with 1 when inconclusive");

    auto* encode = app.add_subcommand("encode", "circle point of a word");
    add_system_options(encode, source);
    mns::EncodeArgs encode_args;
    encode->add_option("--word,word", encode_args.word, "digits")->required();
    encode->add_option("--digits", encode_args.digits, "maximum digits consumed");
    encode->add_option("--tol", encode_args.tol, "target error radius");

    auto* decode = app.add_subcommand("decode", "expansion of a circle point");
    add_system_options(decode, source);
    mns::DecodeArgs decode_args;
    std::string theta_text;
    auto* theta_opt = decode->add_option("--theta", theta_text, "angle in radians or pi*<fraction>");
    auto* real_opt = decode->add_option("--real", decode_args.real, "point of the extended real line");
    theta_opt->excludes(real_opt);
    decode->add_option("--digits", decode_args.digits, "digits to emit");
    decode->add_option("--tol", decode_args.tol, "tolerance of the round-trip check");

    auto* qn = app.add_subcommand("qn", "table of Q_n and the Q lower bound");
    add_system_options(qn, source);
    mns::QnArgs qn_args;
    qn->add_option("--max-n", qn_args.max_n, "largest n");

    auto* sofic = app.add_subcommand("sofic", "automaton of the sets F_v^-1(W_v)");
    add_system_options(sofic, source);
    mns::SoficArgs sofic_args;
    sofic->add_option("--cap", sofic_args.cap, "state cap");
    sofic->add_option("--eps", sofic_args.eps, "state merge tolerance");
    sofic->add_option("--table", sofic_args.table_path, "write the transition table here");
    sofic->add_option("--dot", sofic_args.dot_path, "write a graph description here");
    sofic->add_flag("--strict", sofic_args.strict, "exit with 1 when not shown sofic");

    auto* existence = app.add_subcommand("existence-map", "cover / inward labels over (q_a, q_b)");
    mns::ExistenceArgs existence_args;
    std::string resolution = "200x200", rect;
    existence->add_option("--res", resolution, "<width>x<height>");
    existence->add_option("--depth", existence_args.depth, "word length for the cover search");
    existence->add_option("--nmax", existence_args.n_max, "largest |n| of the inward regions");
    existence->add_option("--rect", rect, "qa_min,qb_min,qa_max,qb_max");
    existence->add_option("--threads", existence_args.threads, "worker threads (0 = all cores)");
    existence->add_flag("--progress", existence_args.progress, "report progress on stderr");

    auto* exporter = app.add_subcommand("export", "system description as JSON");
    add_system_options(exporter, source);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mns::exit_input;
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };
    std::string command = app.get_subcommands().front()->get_name();
    try {
        CommandResult result;
        if (command == "existence-map") {
            const auto [w, h] = parse_resolution(resolution);
            existence_args.width = w;
            existence_args.height = h;
            if (!rect.empty())
                existence_args.rect = parse_rect(rect);
            existence_args.out_path = g.out;
            result = mns::cmd_existence_map(existence_args);
        } else {
            const mns::NumberSystemSpec spec = mns::load_system(source);
            if (command == "classify") {
                classify_args.unicode = g.unicode;
                result = mns::cmd_classify(spec, classify_args);
            } else if (command == "verify") {
                verify_args.prefix_set = split(prefix_set, ',');
                verify_args.unicode = g.unicode;
                result = mns::cmd_verify(spec, verify_args);
            } else if (command == "encode") {
                encode_args.unicode = g.unicode;
                result = mns::cmd_encode(spec, encode_args);
            } else if (command == "decode") {
                if (!theta_text.empty())
                    decode_args.theta = parse_angle_arg(theta_text);
                decode_args.unicode = g.unicode;
                result = mns::cmd_decode(spec, decode_args);
            } else if (command == "qn") {
                result = mns::cmd_qn(spec, qn_args);
            } else if (command == "sofic") {
                sofic_args.unicode = g.unicode;
                result = mns::cmd_sofic(spec, sofic_args);
            } else {
                result = mns::cmd_export(spec, g.out);
            }
        }
        return emit(command, std::move(result), g, elapsed());
    } catch (const mns::NoLegalDigit& e) {
        return report_error(command, "NoLegalDigit", e.what(), mns::exit_failed);
    } catch (const mns::BudgetExceeded& e) {
        return report_error(command, "BudgetExceeded", e.what(), mns::exit_failed);
    } catch (const mns::Error& e) {
        return report_error(command, "InputError", e.what(), mns::exit_input);
    } catch (const json::exception& e) {
        return report_error(command, "InputError", e.what(), mns::exit_input);
    } catch (const std::invalid_argument& e) {
        return report_error(command, "InputError", e.what(), mns::exit_input);
    } catch (const std::out_of_range& e) {
        return report_error(command, "InputError", e.what(), mns::exit_input);
    }
}
