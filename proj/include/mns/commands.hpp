#pragma once

#include "mns/existence.hpp"
#include "mns/interval_system.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mns {

inline constexpr int report_version = 1;

enum ExitCode : int { exit_ok = 0, exit_failed = 1, exit_input = 2 };

struct CommandResult {
    nlohmann::json report;
    int exit_code = exit_ok;
};

// Exactly one of builtin or path.
struct SystemSource {
    std::string builtin;
    std::string path;
};

NumberSystemSpec load_system(const SystemSource& source);

struct ClassifyArgs {
    std::string word;
    bool unicode = false;
};

struct VerifyArgs {
    std::optional<std::size_t> qn;
    std::vector<std::string> prefix_set;
    std::size_t n_max = 8;
    bool strict = false;
    bool unicode = false;
};

struct EncodeArgs {
    std::string word;
    std::optional<std::size_t> digits;
    double tol = 1e-8;
    bool unicode = false;
};

struct DecodeArgs {
    std::optional<double> theta;
    std::optional<double> real;
    std::size_t digits = 60;
    double tol = 1e-8;
    bool unicode = false;
};

struct QnArgs {
    std::size_t max_n = 8;
};

struct SoficArgs {
    std::size_t cap = 10'000;
    double eps = tol::state;
    bool strict = false;
    std::string table_path;
    std::string dot_path;
    bool unicode = false;
};

struct ExistenceArgs {
    std::size_t width = 200;
    std::size_t height = 200;
    int depth = 8;
    int n_max = 8;
    ParamRect rect;
    unsigned threads = 0;
    std::string out_path;
    bool progress = false;
};

CommandResult cmd_classify(const NumberSystemSpec& spec, const ClassifyArgs& args);
CommandResult cmd_verify(const NumberSystemSpec& spec, const VerifyArgs& args);
CommandResult cmd_encode(const NumberSystemSpec& spec, const EncodeArgs& args);
CommandResult cmd_decode(const NumberSystemSpec& spec, const DecodeArgs& args);
CommandResult cmd_qn(const NumberSystemSpec& spec, const QnArgs& args);
CommandResult cmd_sofic(const NumberSystemSpec& spec, const SoficArgs& args);
CommandResult cmd_existence_map(const ExistenceArgs& args);
// Writes the bare system description to out_path when given.
CommandResult cmd_export(const NumberSystemSpec& spec, const std::string& out_path = {});

// Report skeleton shared by every command.
nlohmann::json make_report(const std::string& command);
// Finite numbers as numbers, infinities as "inf" / "-inf".
nlohmann::json number(double x);

} // namespace mns
