#include "mf/errors.hpp"

#include <iostream>
#include <mutex>
#include <sstream>

namespace mf {

namespace {

std::string with_mass(const std::string& what, double mass) {
    std::ostringstream os;
    os << what << " (boundary mass " << mass << ")";
    return os.str();
}

std::mutex& handler_mutex() {
    static std::mutex m;
    return m;
}

WarningHandler& handler() {
    static WarningHandler h = [](const std::string& msg) { std::cerr << "mf warning: " << msg << '\n'; };
    return h;
}

}  // namespace

BoundaryMassError::BoundaryMassError(const std::string& what, double mass)
    : NumericalError(with_mass(what, mass)), mass_(mass) {}

WarningHandler set_warning_handler(WarningHandler h) {
    std::lock_guard lock(handler_mutex());
    WarningHandler old = std::move(handler());
    handler() = h ? std::move(h) : [](const std::string&) {};
    return old;
}

void warn(const std::string& message) {
    std::lock_guard lock(handler_mutex());
    handler()(message);
}

}  // namespace mf
