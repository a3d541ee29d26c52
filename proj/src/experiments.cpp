#include "altiso/experiments.hpp"

#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "altiso/errors.hpp"
#include "altiso/main_algorithm.hpp"
#include "altiso/random_models.hpp"
#include "altiso/stability.hpp"

namespace altiso {

namespace {

// Static partition of trial indices over a small pool; each trial owns the
// rng stream equal to its index, so scheduling cannot change outcomes.
u64 count_trials(u64 trials, u32 threads, const std::function<bool(u64, Rng&)>& trial_fn, u64 seed) {
    std::atomic<u64> hits{0};
    if (threads <= 1) {
        u64 h = 0;
        for (u64 t = 0; t < trials; ++t) {
            Rng rng(seed, t);
            if (trial_fn(t, rng)) ++h;
        }
        return h;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (u32 w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            try {
                u64 h = 0;
                for (u64 t = w; t < trials; t += threads) {
                    Rng rng(seed, t);
                    if (trial_fn(t, rng)) ++h;
                }
                hits += h;
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return hits.load();
}

} // namespace

std::vector<ExperimentRow> run_experiment(const std::string& kind, const ExperimentParams& p) {
    std::vector<ExperimentRow> rows;
    PrimeField f(p.q);

    auto make_row = [&](u32 n, u32 m, u32 r) {
        ExperimentRow row;
        row.kind = kind;
        row.n = n;
        row.m = m;
        row.q = p.q;
        row.r = r;
        row.trials = p.trials;
        row.seed = p.seed;
        return row;
    };

    if (kind == "stability") {
        const u32 r = p.r ? p.r : 4;
        std::vector<u32> sizes = p.sizes.empty() ? std::vector<u32>{4, 6, 8, 10} : p.sizes;
        for (u32 t : sizes) {
            ExperimentRow row = make_row(t, t, r);
            try {
                row.successes = count_trials(
                    p.trials, p.threads,
                    [&](u64, Rng& rng) {
                        MatrixTuple b = sample_bipnait(t, t, r, f, rng);
                        return is_stable_square_fast(b, p.spin_cap, p.subspace_cap);
                    },
                    p.seed);
                row.rate = p.trials ? static_cast<double>(row.successes) / p.trials : 0.0;
            } catch (const cap_exceeded&) {
                row.skipped = true;
                row.trials = 0;
            }
            rows.push_back(row);
        }
        return rows;
    }

    if (kind == "propertyF") {
        const u32 r = p.r ? p.r : choose_r(p.n, p.m);
        ExperimentRow row = make_row(p.n, p.m, r);
        row.successes = count_trials(
            p.trials, p.threads,
            [&](u64, Rng& rng) {
                AlternatingTuple g = sample_nait(p.n, p.m, f, rng);
                return property_F_margin(g, r).second;
            },
            p.seed);
        row.rate = p.trials ? static_cast<double>(row.successes) / p.trials : 0.0;
        rows.push_back(row);
        return rows;
    }

    if (kind == "autsize") {
        const u32 r = p.r ? p.r : 2;
        ExperimentRow row = make_row(p.n, p.m, r);
        std::atomic<u64> aut_sum{0};
        row.successes = count_trials(
            p.trials, p.threads,
            [&](u64, Rng& rng) {
                AlternatingTuple g = sample_liner(p.n, p.m, f, rng);
                IsometryResult res = main_isometry(g, g, r);
                if (res.kind != IsometryResult::Kind::IsoSet) return false;
                aut_sum += res.isometries.size();
                return true;
            },
            p.seed);
        row.rate = p.trials ? static_cast<double>(row.successes) / p.trials : 0.0;
        row.mean_value = row.successes ? static_cast<double>(aut_sum.load()) / row.successes : 0.0;
        rows.push_back(row);
        return rows;
    }

    if (kind == "semistable-threshold") {
        std::vector<u32> ms = p.m_list.empty() ? std::vector<u32>{1, 2, 3, 4} : p.m_list;
        for (u32 m : ms) {
            ExperimentRow row = make_row(p.n, m, 0);
            try {
                row.successes = count_trials(
                    p.trials, p.threads,
                    [&](u64, Rng& rng) {
                        AlternatingTuple g = sample_nait(p.n, m, f, rng);
                        MatrixTuple b(p.n, p.n, f, g.mats);
                        return is_semistable(b, p.subspace_cap);
                    },
                    p.seed);
                row.rate = p.trials ? static_cast<double>(row.successes) / p.trials : 0.0;
            } catch (const cap_exceeded&) {
                row.skipped = true;
                row.trials = 0;
            }
            rows.push_back(row);
        }
        return rows;
    }

    if (kind == "retry-count") {
        ExperimentRow row = make_row(p.n, p.m, 0);
        std::atomic<u64> total_retries{0};
        row.successes = count_trials(
            p.trials, p.threads,
            [&](u64, Rng& rng) {
                u32 rej = 0;
                sample_liner(p.n, p.m, f, rng, &rej);
                total_retries += rej;
                return rej == 0;
            },
            p.seed);
        row.rate = p.trials ? static_cast<double>(row.successes) / p.trials : 0.0;
        row.mean_value = p.trials ? static_cast<double>(total_retries.load()) / p.trials : 0.0;
        rows.push_back(row);
        return rows;
    }

    throw std::invalid_argument("run_experiment: unknown kind '" + kind + "'");
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
    std::string out = "kind,n,m,q,r,trials,successes,rate,seed\n";
    char buf[64];
    for (const ExperimentRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6f", r.rate);
        out += r.kind + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," +
               std::to_string(r.q) + "," + std::to_string(r.r) + "," + std::to_string(r.trials) +
               "," + std::to_string(r.successes) + "," + buf + "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

} // namespace altiso
