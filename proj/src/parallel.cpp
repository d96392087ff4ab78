#include "qent/parallel.hpp"

#include <cstdlib>
#include <string>

namespace qent {

int default_workers()
{
    if (const char* env = std::getenv("QENT_WORKERS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace qent
