#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "shakerbeam/shakerbeam.h"

namespace sbcli {

// Process exit codes. Stable contract for scripts.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitIo = 2,
    kExitNoRoots = 3,
    kExitPrecondition = 4,
    kExitDegenerateMode = 5,
    kExitVerdictFalse = 6,
};

class CliError : public std::runtime_error {
public:
    CliError(int exit_code, const std::string& message) : std::runtime_error(message), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

struct ParamSetDeleter {
    void operator()(sb_param_set* p) const { sb_param_set_destroy(p); }
};
struct ParamsDeleter {
    void operator()(sb_params* p) const { sb_params_destroy(p); }
};
struct RootListDeleter {
    void operator()(sb_root_list* p) const { sb_root_list_destroy(p); }
};
struct LocalizationDeleter {
    void operator()(sb_localization* p) const { sb_localization_destroy(p); }
};
struct RootTableDeleter {
    void operator()(sb_root_table* p) const { sb_root_table_destroy(p); }
};
struct ModeDeleter {
    void operator()(sb_mode* p) const { sb_mode_destroy(p); }
};

using ParamSetPtr = std::unique_ptr<sb_param_set, ParamSetDeleter>;
using ParamsPtr = std::unique_ptr<sb_params, ParamsDeleter>;
using RootListPtr = std::unique_ptr<sb_root_list, RootListDeleter>;
using LocalizationPtr = std::unique_ptr<sb_localization, LocalizationDeleter>;
using RootTablePtr = std::unique_ptr<sb_root_table, RootTableDeleter>;
using ModePtr = std::unique_ptr<sb_mode, ModeDeleter>;

// Exit code for a library failure.
inline int exit_code_for(sb_status status) {
    switch (status) {
        case SB_ERR_PRECONDITION: return kExitPrecondition;
        case SB_ERR_DEGENERATE_MODE: return kExitDegenerateMode;
        default: return kExitConfig;
    }
}

// Throws CliError carrying the library message when status is not SB_OK.
inline void check(sb_status status, const std::string& context) {
    if (status == SB_OK) return;
    std::string msg = context + ": " + sb_last_error();
    if (status == SB_ERR_DEGENERATE_MODE) msg += " (det M3 = " + std::to_string(sb_last_error_value()) + ")";
    throw CliError(exit_code_for(status), msg);
}

}  // namespace sbcli
