#include "stgen/base_codes.hpp"

namespace stgen {

const std::vector<BaseCode> &base_catalog() {
    static const std::vector<BaseCode> catalog = [] {
        std::vector<BaseCode> list;
        auto add = [&](const char *id, int n, int k, std::vector<std::string> rows) {
            list.push_back({id, n, k, 1, BitMatrix::from_rows(rows)});
        };
        add("(2,1)1", 2, 1, {"1"});
        add("(3,1)1", 3, 1, {"11"});
        add("(3,2)1", 3, 2, {"1", "1"});
        add("(4,3)1", 4, 3, {"1", "1", "1"});
        add("(5,3)1", 5, 3, {"11", "11", "11"});
        add("(5,4)1", 5, 4, {"1", "1", "1", "1"});
        return list;
    }();
    return catalog;
}

const BaseCode &find_base_code(std::string_view id) {
    for (const auto &c : base_catalog())
        if (c.id == id)
            return c;
    throw std::invalid_argument("unknown base code id: \"" + std::string(id) +
                                "\" (known: (2,1)1 (3,1)1 (3,2)1 (4,3)1 (5,3)1 (5,4)1)");
}

} // namespace stgen
