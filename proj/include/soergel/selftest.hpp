#ifndef SOERGEL_SELFTEST_HPP
#define SOERGEL_SELFTEST_HPP

// The acceptance suite: every criterion is evaluated exactly (zero
// tolerance) on a fixed preset/prime matrix and reported as pass/fail.
// Shared by `soergel selftest` and the standalone acceptance runner.

#include <memory>
#include <string>
#include <vector>

#include "soergel/charcalc.hpp"
#include "soergel/jsonio.hpp"

namespace soergel {

struct SelftestConfig {
    int peel_budget = 4096;
    int max_weyl = kDefaultWeylCap;
    // presets exercised over the rationals for the KL calibration
    std::vector<std::string> calibration_presets{"A1", "A2", "A3", "B2", "G2"};
    // (preset, ell) pairs for the full K / Z_(ell) / F_ell module pipeline
    std::vector<std::pair<std::string, long>> modular_runs{
        {"A1", 3}, {"A2", 5}, {"B2", 3}, {"G2", 5}};
    // coinvariant base-change suite
    std::vector<std::pair<std::string, long>> lemma_runs{
        {"A2", 5}, {"B2", 3}, {"G2", 5}, {"GL3", 2}};
    // Hom base-change over Bott-Samelson pairs
    std::string bs_hom_preset = "B2";
    long bs_hom_prime = 3;
    int bs_hom_maxlen = 4;
    // presets for the KL inversion identity (everything with |W| <= 48)
    std::vector<std::string> inversion_presets{"A1", "A2", "A3", "B2", "C2", "B3",
                                               "C3", "G2", "GL2", "GL3", "GL4"};
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::vector<std::string> details;
};

struct SelftestReport {
    std::vector<CriterionResult> criteria;
    bool all_pass = true;

    Json to_json() const;
    // one line per criterion: "[PASS] criterion 1: ..."
    std::string to_text() const;
};

SelftestReport run_selftest(const SelftestConfig& cfg = {});

} // namespace soergel

#endif
