#include "cdm/congruence.hpp"

#include <array>
#include <cstdlib>

namespace cdm {

CongruenceSpec CongruenceSpec::parse(const std::string& text) {
    static const char* field_names[4] = {"l1", "m1", "l2", "m2"};
    std::array<std::int64_t, 4> vals{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t comma = (i < 3) ? text.find(',', pos) : text.size();
        if (comma == std::string::npos)
            throw std::invalid_argument("spec: expected four comma-separated fields, missing " +
                                        std::string(field_names[i]));
        std::string piece = text.substr(pos, comma - pos);
        char* end = nullptr;
        long long v = std::strtoll(piece.c_str(), &end, 10);
        if (piece.empty() || end == piece.c_str() || *end != '\0')
            throw std::invalid_argument("spec: field " + std::string(field_names[i]) +
                                        " is not an integer: '" + piece + "'");
        vals[i] = v;
        pos = comma + 1;
    }
    CongruenceSpec s{vals[0], vals[1], vals[2], vals[3]};
    s.validate();
    return s;
}

}  // namespace cdm
