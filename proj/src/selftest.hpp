#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace linefree {

struct SelftestCase {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;  // error text when the check threw
};

std::vector<std::string> selftest_modules();
// module "all" (or empty) runs every module.
std::vector<SelftestCase> run_selftest(std::string_view module);
std::string selftest_text(const std::vector<SelftestCase>& cases);

}  // namespace linefree
