#include "mns/builtin.hpp"
#include "mns/commands.hpp"
#include "mns/config.hpp"
#include "mns/errors.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace mns;
using nlohmann::json;

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const std::string command = std::string(MNS_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun run;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        return run;
    std::array<char, 4096> buffer;
    while (std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe))
        run.out.append(buffer.data(), n);
    const int status = pclose(pipe);
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("mns_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

// --------------------------------------------------------------------------
// in-process commands

TEST(Classify, Examples) {
    auto r = cmd_classify(cf_system(), {"1"});
    EXPECT_EQ(r.report["result"]["class"], "parabolic");
    EXPECT_EQ(r.report["version"], report_version);
    EXPECT_EQ(r.report["command"], "classify");
    EXPECT_EQ(r.exit_code, exit_ok);

    r = cmd_classify(binary_system(), {"0"});
    EXPECT_EQ(r.report["result"]["class"], "hyperbolic");
    const auto& fixed = r.report["result"]["boundary_fixed_points"];
    ASSERT_EQ(fixed.size(), 2u);
    for (const auto& p : fixed) {
        EXPECT_NEAR(std::abs(p["point"][0].get<double>()), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(p["point"][1].get<double>()), 1.0, 1e-12);
        // -i attracts under F_0
        EXPECT_EQ(p["stability"], p["point"][1].get<double>() < 0 ? "stable" : "unstable");
    }

    r = cmd_classify(cf_system(), {"00"});
    EXPECT_EQ(r.report["result"]["class"], "identity");
}

TEST(Verify, ExitCodes) {
    VerifyArgs args;
    args.prefix_set = {"01", "01-", "1", "1-"};
    auto r = cmd_verify(cf_system(), args);
    EXPECT_EQ(r.report["result"]["status"], "verified_prefix_set");
    EXPECT_EQ(r.exit_code, exit_ok);

    args = {};
    args.qn = 1;
    r = cmd_verify(binary_system(), args);
    EXPECT_EQ(r.report["result"]["status"], "inconclusive");
    EXPECT_EQ(r.exit_code, exit_ok);
    args.strict = true;
    EXPECT_EQ(cmd_verify(binary_system(), args).exit_code, exit_failed);

    r = cmd_verify(parabolic3_system(), VerifyArgs{});
    EXPECT_NE(r.report["result"]["status"], "inconclusive");
}

TEST(Decode, RealInputRoundTrip) {
    DecodeArgs args;
    args.real = 0.5;
    const auto r = cmd_decode(binary_system(), args);
    EXPECT_EQ(r.exit_code, exit_ok);
    EXPECT_LE(r.report["result"]["round_trip"]["circle_distance"].get<double>(), 1e-6);

    const std::string word = r.report["result"]["word"];
    EncodeArgs enc;
    enc.word = word;
    const auto e = cmd_encode(binary_system(), enc);
    EXPECT_NEAR(e.report["result"]["point"]["real"].get<double>(), 0.5, 1e-6);

    DecodeArgs both;
    both.real = 0.5;
    both.theta = 1.0;
    EXPECT_THROW(cmd_decode(binary_system(), both), ConfigError);
}

TEST(Decode, ParabolicVertex) {
    DecodeArgs args;
    args.theta = 0.0;
    args.digits = 40;
    const auto r = cmd_decode(parabolic3_system(), args);
    EXPECT_EQ(r.exit_code, exit_ok);
    const std::string word = r.report["result"]["word"];
    EXPECT_TRUE(parabolic3_system().subshift.in_language(parabolic3_system().alphabet.parse(word)));
}

TEST(Encode, CfWordReport) {
    EncodeArgs args;
    args.word = "1-" + std::string();
    for (int i = 0; i < 39; ++i)
        args.word += "1-";
    args.tol = 1e-6;
    const auto r = cmd_encode(cf_system(), args);
    EXPECT_EQ(r.report["result"]["digits_consumed"], 40);
    EXPECT_FALSE(r.report["result"]["converged"].get<bool>());
    EXPECT_FALSE(r.report["warnings"].empty());
    EXPECT_THROW(cmd_encode(cf_system(), EncodeArgs{"100"}), IllegalPrefix);
}

TEST(Qn, Tables) {
    auto r = cmd_qn(binary_trivial_cover_system(), {6});
    const auto& table = r.report["result"]["table"];
    ASSERT_EQ(table.size(), 7u);
    EXPECT_EQ(table[0]["Q_n"], 1.0);
    EXPECT_TRUE(table[0]["root"].is_null());
    for (std::size_t n = 1; n <= 6; ++n)
        EXPECT_LE(table[n]["Q_n"].get<double>(), std::ldexp(1.0, -static_cast<int>(n)) + 1e-9);
    EXPECT_FALSE(r.report["warnings"].empty());

    r = cmd_qn(parabolic3_system(), {3});
    EXPECT_GE(r.report["result"]["lower_bound"].get<double>(), 1.0 - 1e-9);
}

TEST(Sofic, CapAndExports) {
    SoficArgs args;
    args.cap = 1;
    auto r = cmd_sofic(parabolic3_system(), args);
    EXPECT_EQ(r.report["result"]["verdict"], "not shown sofic within cap");
    EXPECT_EQ(r.exit_code, exit_ok);
    args.strict = true;
    EXPECT_EQ(cmd_sofic(parabolic3_system(), args).exit_code, exit_failed);

    SoficArgs full;
    full.table_path = scratch("table.tsv").string();
    full.dot_path = scratch("z.dot").string();
    r = cmd_sofic(parabolic3_system(), full);
    EXPECT_TRUE(r.report["result"]["sofic"].get<bool>());
    EXPECT_LE(r.report["result"]["state_count"].get<int>(), 5);
    EXPECT_LE(r.report["result"]["transition_residual"].get<double>(), tol::state);
    EXPECT_EQ(slurp(full.table_path).rfind("state\t", 0), 0u);
    EXPECT_EQ(slurp(full.dot_path).rfind("digraph", 0), 0u);
    std::filesystem::remove(full.table_path);
    std::filesystem::remove(full.dot_path);
}

TEST(ExistenceMap, SingleCellAndFiles) {
    ExistenceArgs args;
    args.width = 1;
    args.height = 1;
    args.depth = 10;
    args.threads = 1;
    auto r = cmd_existence_map(args);
    EXPECT_EQ(r.exit_code, exit_ok);
    EXPECT_EQ(r.report["result"]["dual_labelled"], 0);

    args.width = 8;
    args.height = 6;
    args.depth = 5;
    for (const std::string ext : {"pgm", "csv", "json"}) {
        args.out_path = scratch("map." + ext).string();
        r = cmd_existence_map(args);
        EXPECT_EQ(r.report["result"]["written"], args.out_path);
        const std::string text = slurp(args.out_path);
        if (ext == "pgm")
            EXPECT_EQ(text.rfind("P2\n8 6\n255\n", 0), 0u);
        else if (ext == "csv")
            EXPECT_EQ(text.rfind("q_a,q_b,label\n", 0), 0u);
        else
            EXPECT_EQ(json::parse(text)["depth"], 5);
        std::filesystem::remove(args.out_path);
    }
}

TEST(Export, RoundTrip) {
    const auto r = cmd_export(binary_system());
    const NumberSystemSpec rebuilt = build_spec(parse_config(r.report["result"]));
    const NumberSystemSpec original = binary_system();
    for (std::size_t a = 0; a < 4; ++a)
        EXPECT_LE(rebuilt.cover[a].distance(original.cover[a]), 1e-12);
    EXPECT_EQ(cmd_export(binary_system()).report, r.report);
}

TEST(LoadSystem, Sources) {
    EXPECT_THROW(load_system({}), ConfigError);
    EXPECT_THROW(load_system({"cf", "x.json"}), ConfigError);
    EXPECT_EQ(load_system({"cf", ""}).name, "cf");
    EXPECT_EQ(load_system({"", std::string(MNS_SYSTEMS_DIR) + "/binary_trivial.json"}).name, "binary-trivial");
}

TEST(Number, NonFinite) {
    EXPECT_EQ(number(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(number(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(number(1.5), 1.5);
}

// --------------------------------------------------------------------------
// the binary

TEST(Cli, ClassifyOutputsJson) {
    const CliRun run = run_cli("classify --builtin cf --word 1");
    EXPECT_EQ(run.exit_code, 0);
    EXPECT_EQ(json::parse(run.out)["result"]["class"], "parabolic");
}

TEST(Cli, VerifyStrictExitCode) {
    EXPECT_EQ(run_cli("verify --builtin binary --qn 1").exit_code, 0);
    EXPECT_EQ(run_cli("verify --builtin binary --qn 1 --strict").exit_code, 1);
    const CliRun cf = run_cli("verify --builtin cf --prefix-set 01,01-,1,1- --strict");
    EXPECT_EQ(cf.exit_code, 0);
    EXPECT_EQ(json::parse(cf.out)["result"]["status"], "verified_prefix_set");
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run_cli("classify --builtin nosuch --word 1").exit_code, 2);
    EXPECT_EQ(run_cli("classify --builtin cf --word 7").exit_code, 2);
    EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
    EXPECT_EQ(run_cli("qn --builtin cf --system x.json").exit_code, 2);
    EXPECT_EQ(run_cli("qn --system /nonexistent.json").exit_code, 2);
    EXPECT_EQ(run_cli("decode --builtin cf --theta tau").exit_code, 2);
    EXPECT_EQ(run_cli("--help").exit_code, 0);
}

TEST(Cli, DecodeThetaPiForm) {
    const CliRun run = run_cli("decode --builtin binary --theta pi*3/2 --digits 30");
    ASSERT_EQ(run.exit_code, 0);
    EXPECT_EQ(json::parse(run.out)["result"]["word"], std::string(30, '0'));
}

TEST(Cli, OutFileAndExportRoundTrip) {
    const auto path = scratch("exported.json");
    ASSERT_EQ(run_cli("--out " + path.string() + " export --builtin cf").exit_code, 0);
    const CliRun qn = run_cli("qn --system " + path.string() + " --max-n 2");
    EXPECT_EQ(qn.exit_code, 0);
    EXPECT_EQ(json::parse(qn.out)["system"], "cf");

    const auto report = scratch("report.json");
    EXPECT_EQ(run_cli("--out " + report.string() + " qn --builtin cf --max-n 2").exit_code, 0);
    EXPECT_EQ(json::parse(slurp(report))["command"], "qn");
    std::filesystem::remove(path);
    std::filesystem::remove(report);
}

TEST(Cli, Deterministic) {
    EXPECT_EQ(run_cli("sofic --builtin binary").out, run_cli("sofic --builtin binary").out);
    EXPECT_EQ(run_cli("existence-map --res 6x5 --depth 4 --threads 3").out,
              run_cli("existence-map --res 6x5 --depth 4 --threads 1").out);
}
