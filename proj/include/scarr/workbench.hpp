#ifndef SCARR_WORKBENCH_HPP
#define SCARR_WORKBENCH_HPP

#include "scarr/spec_file.hpp"

#include <json.hpp>

#include <string>

namespace scarr {

struct RunFlags {
    int degree = 1;
    bool json = false;
    std::string mode = "compatible";   // susy | metric | compatible
    std::string seed = "trivial";      // trivial | <spec file with CONNECTION>
    std::string commute_with;          // vector field name, empty = none
};

// exit_code: 0 all verdicts pass, 1 a mathematical verdict fails, 2 input
// error. The machine block mirrors every verdict with sorted keys; the
// human text is a deterministic rendering of the same data.
struct Report {
    std::string command;
    nlohmann::json machine;
    int exit_code = 0;

    std::string human() const;
    std::string machine_text() const { return machine.dump(2) + "\n"; }
};

// command in {check, kernel, reduce, killing, scarr, connect,
// verify-connection, contract}. Input errors are rendered into the report
// rather than thrown.
Report run(const std::string& command, const ManifoldSpec& spec, const RunFlags& flags);

} // namespace scarr

#endif
