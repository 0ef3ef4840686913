// Acceptance gate runner: one line per criterion, exit 0 iff all pass.

#include <iostream>

#include "fracode/suite.hpp"

int main() {
    const fracode::SuiteReport rep = fracode::run_suite(std::cout);
    return rep.all_pass ? 0 : 1;
}
