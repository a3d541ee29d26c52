#pragma once

#include <string>
#include <vector>

#include "altiso/field.hpp"

namespace altiso {

struct ExperimentRow {
    std::string kind;
    u32 n = 0, m = 0, q = 2, r = 0;
    u64 trials = 0, successes = 0;
    double rate = 0.0;
    u64 seed = 0;
    bool skipped = false;
    double mean_value = 0.0; // kind-specific aggregate (e.g. mean retries)
};

struct ExperimentParams {
    u64 seed = 1;
    u64 trials = 100;
    u32 q = 2;
    u32 r = 0;                 // 0 = derive where applicable
    u32 n = 0, m = 0;
    std::vector<u32> sizes;    // stability: the s = t values
    std::vector<u32> m_list;   // semistable-threshold: the m values
    u32 threads = 1;
    u64 subspace_cap = 1'000'000;
    u64 spin_cap = 1u << 22;
};

// kinds: stability | propertyF | autsize | semistable-threshold | retry-count.
// Deterministic given the seed: trial i uses stream i of the seed.
std::vector<ExperimentRow> run_experiment(const std::string& kind, const ExperimentParams& p);

// Fixed header kind,n,m,q,r,trials,successes,rate,seed; rates to 6 decimals.
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);

} // namespace altiso
