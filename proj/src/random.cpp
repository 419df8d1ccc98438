#include "flmlab/random.hpp"

#include <string>

namespace flmlab {

std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index) {
    std::string key(name);
    key += ':';
    key += std::to_string(index);
    return splitmix64(fnv1a64(key) ^ master);
}

} // namespace flmlab
