#ifndef VP1D_ERRORS_HPP
#define VP1D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vp1d {

// Bad or inconsistent run configuration (file syntax, ranges, geometry).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Compactly supported data reached the edge of the finite grid, so the
// free-space field model is no longer valid for this run.
struct support_escape_error : std::runtime_error {
    support_escape_error(const std::string& msg, double time_, long step_)
        : std::runtime_error(msg), time(time_), step(step_) {}
    double time;
    long step;
};

// A non-finite value appeared on the grid.
struct numeric_error : std::runtime_error {
    numeric_error(const std::string& msg, long step_)
        : std::runtime_error(msg), step(step_) {}
    long step;
};

} // namespace vp1d

#endif
