#include "dcs/label.hpp"

#include <ostream>

#include "dcs/error.hpp"

namespace dcs {

std::string Label::str() const {
    std::string out = name;
    for (int32_t i : indices) {
        out += '.';
        out += std::to_string(i);
    }
    return out;
}

Label Label::parse(std::string_view text) {
    if (text.empty())
        throw Error("E-PARSE", "empty label");
    Label label;
    size_t dot = text.find('.');
    label.name = std::string(text.substr(0, dot));
    while (dot != std::string_view::npos) {
        text.remove_prefix(dot + 1);
        size_t next = text.find('.');
        std::string_view part = text.substr(0, next);
        if (part.empty())
            throw Error("E-PARSE", "malformed label index in '" + label.name + "'");
        int32_t value = 0;
        for (char c : part) {
            if (c < '0' || c > '9')
                throw Error("E-PARSE", "non-numeric label index '" + std::string(part) + "'");
            value = value * 10 + (c - '0');
        }
        label.indices.push_back(value);
        dot = next;
    }
    return label;
}

std::ostream& operator<<(std::ostream& os, const Label& label) {
    return os << label.str();
}

} // namespace dcs
