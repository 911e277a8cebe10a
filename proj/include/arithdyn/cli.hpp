#pragma once

#include <optional>
#include <string>

#include "arithdyn/ratmap.hpp"
#include "arithdyn/search.hpp"

namespace arithdyn::cli {

enum ExitStatus : int {
    kOk = 0,
    kPrecondition = 2,
    kCap = 3,
};

struct CommandConfig {
    /// analyze | orbit | pairs | divisor | certify | powering | exceptional
    std::string command;
    std::string map_spec;
    std::optional<std::string> u, w, point;
    std::string S;
    std::optional<PairWindow> window;
    /// "MxN", parsed by run() when `window` is unset.
    std::string window_spec;
    /// Divisor depth, orbit length or iteration budget, depending on the command.
    std::optional<std::size_t> n;
    bool functorial = false;
    std::string format = "json";  ///< json | table
    bool timestamp = true;
    Limits limits;
};

struct RunResult {
    int status = kOk;
    std::string document;
};

/// Parses "MxN".
PairWindow parse_window(const std::string& text);

RunResult run(const CommandConfig& config);

}  // namespace arithdyn::cli
