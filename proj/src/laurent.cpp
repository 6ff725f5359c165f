#include "soergel/laurent.hpp"

#include <sstream>

namespace soergel {

std::string Laurent::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
        Int abs = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (abs != 1 || e == 0) os << abs.get_str();
        if (e != 0) {
            if (abs != 1) os << "*";
            os << "v";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

} // namespace soergel
