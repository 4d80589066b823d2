#pragma once

#include <stdexcept>
#include <string>

// Always-on internal invariant check; failures throw so the C boundary can
// turn them into an error code instead of aborting the host process.
#define RC_CHECK(cond, what)                                                      \
    do {                                                                          \
        if (!(cond))                                                              \
            throw std::logic_error(std::string("internal check failed: ") + what \
                                   + " [" #cond "]");                             \
    } while (0)
