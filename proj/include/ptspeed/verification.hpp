#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptspeed/liouvillian.hpp"
#include "ptspeed/rng.hpp"

namespace ptspeed {

/* Deterministic random-model generator configuration. */
struct ModelGenerator {
    int n = 2;
    double hamiltonian_scale = 1.0;
    double lindblad_scale = 1.0;
    int n_lindblads = 1;
    bool hermitian_lindblads = false;
    std::uint64_t seed = 0;
};

/* Draws a model with Gaussian-Hermitian H (entries scaled by
   hamiltonian_scale) and n_lindblads Gaussian jump operators (Hermitian when
   flagged, which forces the affine Bloch drift to vanish).  Identical
   generator configurations produce identical models. */
LindbladModel random_model(const ModelGenerator& gen);

/* Outcome of one property checked over many random cases. */
struct PropertyResult {
    std::string name;
    int n_cases = 0;
    int n_failed = 0;
    std::string counterexample;  // first failing case, empty when clean
    bool passed() const { return n_failed == 0; }
};

struct SuiteReport {
    std::uint64_t seed = 0;
    int n_cases = 0;
    std::vector<PropertyResult> properties;
    bool all_passed() const;
};

/* Runs every cross-module consistency property on n_cases random instances
   (n_cases >= 1, else ConfigError).  inject_fault corrupts the Bloch
   generator of the first flow-consistency case so the harness can prove it
   detects broken invariants and reports the offending configuration. */
SuiteReport run_property_suite(std::uint64_t seed, int n_cases, bool inject_fault = false);

/* Renders the report as fixed-width "pass/FAIL name (failed/total)" lines. */
std::string format_report(const SuiteReport& report);

}  // namespace ptspeed
