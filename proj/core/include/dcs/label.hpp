#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dcs {

// An action label: a base name plus an optional index list. The canonical
// textual form joins name and indices with dots, e.g. get[1] -> "get.1".
// Canonical label order is (name, indices) lexicographic; every sorted
// label sequence in the engine uses this order.
struct Label {
    std::string name;
    std::vector<int32_t> indices;

    auto operator<=>(const Label&) const = default;

    std::string str() const;

    // Inverse of str(): "get.1.2" -> {"get", {1, 2}}.
    static Label parse(std::string_view text);
};

using LabelSet = std::set<Label>;

std::ostream& operator<<(std::ostream& os, const Label& label);

} // namespace dcs
