#pragma once

#include <map>
#include <string>
#include <vector>

namespace riesz::cli {

// exit codes
constexpr int kOk = 0;
constexpr int kChecksFailed = 1;  // verify ran but some check failed
constexpr int kInvalid = 2;
constexpr int kNumeric = 3;

struct CommandRequest {
    std::string subcommand;
    std::map<std::string, std::string> params;  // option name without dashes -> raw value
};

struct CommandResult {
    int status = kOk;
    std::string output;  // artifact text (json, csv or verify lines)
    std::string error;
};

const std::vector<std::string>& subcommands();
// options accepted by a subcommand
const std::vector<std::string>& options_for(const std::string& subcommand);

CommandResult run(const CommandRequest& req);

// density-curves | phi-curve | four-point-energies; CSV text
std::string emit_figure_data(const std::string& kind, const std::map<std::string, std::string>& params);

// argv front end; writes to --output or stdout
int main_entry(int argc, char** argv);

}  // namespace riesz::cli
