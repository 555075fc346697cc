#ifndef LST_ERRORS_HPP
#define LST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lst {

enum class Errc {
    EmptyTree,
    RankOutOfRange,
    StaleHandle,
    HandleNotInTree,
    OrderViolation,
    InvalidPartition,
    BadArgument,
};

class TreeError : public std::runtime_error {
public:
    TreeError(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace lst

#endif
