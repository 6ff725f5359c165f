// Standalone acceptance runner: evaluates every criterion of the suite and
// prints one pass/fail line each. Exit code 0 iff everything passed.

#include <iostream>

#include "soergel/selftest.hpp"

int main() {
    soergel::SelftestReport rep = soergel::run_selftest();
    std::cout << rep.to_text();
    return rep.all_pass ? 0 : 1;
}
