#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "altiso/adjoint.hpp"
#include "altiso/baer.hpp"
#include "altiso/dp_algorithm.hpp"
#include "altiso/errors.hpp"
#include "altiso/experiments.hpp"
#include "altiso/individualisation.hpp"
#include "altiso/io.hpp"
#include "altiso/main_algorithm.hpp"
#include "altiso/oracle.hpp"
#include "altiso/random_models.hpp"
#include "altiso/stability.hpp"
#include "altiso/subspaces.hpp"

using namespace altiso;
using nlohmann::json;

namespace {

int cmd_sample(const std::string& model, u32 n, u32 m, u32 q, u32 s, u32 t, u32 r, u64 seed,
               u64 stream, const std::string& out_path) {
    PrimeField f(q);
    Rng rng(seed, stream);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot open " + out_path);
        out = &file;
    }
    if (model == "nait") {
        write_alt_space(*out, sample_nait(n, m, f, rng));
    } else if (model == "liner") {
        write_alt_space(*out, sample_liner(n, m, f, rng));
    } else if (model == "bipnait") {
        write_mat_space(*out, sample_bipnait(s, t, r, f, rng));
    } else {
        throw std::invalid_argument("unknown model " + model);
    }
    return 0;
}

int cmd_isometry(const std::string& file_g, const std::string& file_h, const std::string& algo,
                 bool find_one, u32 r_override, u32 threads, bool as_json, u64 cap_gl, u64 cap_ind) {
    AlternatingTuple g = read_alt_space_file(file_g);
    AlternatingTuple h = read_alt_space_file(file_h);
    json report;
    report["algo"] = algo;
    report["n"] = g.n;
    report["q"] = g.field.p();

    bool isometric = false;
    std::string witness;
    u64 count = 0;
    bool counted = false;

    if (algo == "brute") {
        std::vector<Matrix> iso = brute_force_iso(g, h, cap_gl, threads);
        isometric = !iso.empty();
        if (isometric) witness = matrix_to_string(iso.front());
        count = iso.size();
        counted = true;
    } else if (algo == "main") {
        const u32 r = r_override ? r_override : choose_r(g.n, g.m());
        MainOptions opts;
        opts.find_one = find_one;
        opts.threads = threads;
        opts.ind_cap = cap_ind;
        IsometryResult res = main_isometry(g, h, r, opts);
        report["r"] = r;
        report["gate_dim"] = res.gate_dim;
        if (res.kind == IsometryResult::Kind::NotPropertyF) {
            report["outcome"] = "not-property-F";
            if (as_json) std::cout << report.dump() << '\n';
            else
                std::cout << "property-F gate failed (projection dim " << res.gate_dim << " > "
                          << g.n - r << ")\n";
            return 2;
        }
        isometric = !res.isometries.empty();
        if (isometric) witness = matrix_to_string(res.isometries.front());
        count = res.isometries.size();
        counted = !find_one;
        report["individualisations"] = res.stats.individualisations;
        report["candidates"] = res.stats.candidates;
    } else if (algo == "dp") {
        DpResult res = dp_isometry(g, h);
        isometric = !res.pairs.empty;
        if (isometric) {
            witness = matrix_to_string(matrix_of_part(res.dom, res.pairs.rep, 0));
            count = static_cast<u64>(dp_isometry_count(res));
            counted = true;
        }
    } else {
        throw std::invalid_argument("unknown algorithm " + algo);
    }

    report["isometric"] = isometric;
    if (isometric) report["witness"] = witness;
    if (counted) report["count"] = count;
    if (as_json) {
        std::cout << report.dump() << '\n';
    } else if (isometric) {
        std::cout << "isometric; witness = " << witness;
        if (counted) std::cout << "; |Iso| = " << count;
        std::cout << '\n';
    } else {
        std::cout << "not isometric\n";
    }
    return isometric ? 0 : 1;
}

int cmd_stable(const std::string& path, u32 flip_r, bool semi, bool fast, u64 cap) {
    AlternatingTuple g = read_alt_space_file(path);
    MatrixTuple b = flip_r ? flip_slice(g, flip_r) : MatrixTuple(g.n, g.n, g.field, g.mats);
    bool verdict;
    if (semi) verdict = is_semistable(b, cap);
    else if (fast) verdict = is_stable_square_fast(b, 1u << 22, cap);
    else verdict = is_stable(b, cap);
    std::cout << (semi ? "semistable: " : "stable: ") << (verdict ? "yes" : "no") << '\n';
    return verdict ? 0 : 1;
}

int cmd_adjoint(const std::string& path, u32 flip_r, bool as_json) {
    AlternatingTuple g = read_alt_space_file(path);
    MatrixTuple b = flip_r ? flip_slice(g, flip_r) : MatrixTuple(g.n, g.n, g.field, g.mats);
    AdjointBasis adj = adjoint_algebra(b);
    const u32 p1 = pi1_dimension(adj);
    if (as_json) {
        json j;
        j["dim_adj"] = adj.dim();
        j["dim_pi1"] = p1;
        if (flip_r) j["gate_pass"] = p1 <= g.n - flip_r;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "dim Adj = " << adj.dim() << ", dim pi1 = " << p1;
        if (flip_r) std::cout << ", gate (<= " << g.n - flip_r << "): " << (p1 <= g.n - flip_r ? "pass" : "fail");
        std::cout << '\n';
    }
    return 0;
}

int cmd_subspaces(u32 n, u32 q, u64 cap) {
    SubspaceList subs = enumerate_subspaces(n, PrimeField(q), cap);
    for (u32 d = 0; d <= n; ++d)
        std::cout << "dim " << d << ": " << subs.by_dim[d].size() << '\n';
    std::cout << "total: " << subs.total << '\n';
    return 0;
}

int cmd_baer(const std::string& path, bool check, u64 cap) {
    AlternatingTuple g = read_alt_space_file(path);
    FiniteGroupTable t = baer_group(g, cap);
    std::cout << "order: " << t.order << '\n';
    if (check) {
        const bool ax = t.check_axioms();
        const bool expo = t.check_exponent(g.field.p());
        const bool cl2 = t.check_class2();
        std::cout << "axioms: " << (ax ? "ok" : "FAIL") << ", exponent-" << g.field.p() << ": "
                  << (expo ? "ok" : "FAIL") << ", class<=2: " << (cl2 ? "ok" : "FAIL")
                  << ", abelian: " << (t.is_abelian() ? "yes" : "no") << '\n';
        if (!(ax && expo && cl2)) return 1;
    }
    return 0;
}

int cmd_validate(const std::string& path) {
    AlternatingTuple g = read_alt_space_file(path);
    std::cout << "ok: n=" << g.n << " m=" << g.m() << " q=" << g.field.p()
              << " dim=" << span_basis_alternating(g).dim << '\n';
    return 0;
}

int cmd_experiment(const std::string& kind, const ExperimentParams& params, bool as_json,
                   const std::string& out_path) {
    std::vector<ExperimentRow> rows = run_experiment(kind, params);
    const std::string csv = rows_to_csv(rows);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        out << csv;
    } else if (!as_json) {
        std::cout << csv;
    }
    if (as_json) {
        for (const ExperimentRow& r : rows) {
            json j;
            j["kind"] = r.kind;
            j["n"] = r.n;
            j["m"] = r.m;
            j["q"] = r.q;
            j["r"] = r.r;
            j["trials"] = r.trials;
            j["successes"] = r.successes;
            j["rate"] = r.rate;
            j["seed"] = r.seed;
            j["skipped"] = r.skipped;
            j["mean_value"] = r.mean_value;
            std::cout << j.dump() << '\n';
        }
    }
    return 0;
}

int cmd_make_fixtures(const std::string& out_dir) {
    PrimeField f2(2);
    {
        Rng rng(42, 0);
        write_alt_space_file(out_dir + "/sample_nait_n4_m2_q2_seed42.alt",
                             sample_nait(4, 2, f2, rng));
    }
    {
        Rng rng(7, 0);
        write_alt_space_file(out_dir + "/sample_liner_n5_m3_q3_seed7.alt",
                             sample_liner(5, 3, PrimeField(3), rng));
    }
    {
        ExperimentParams p;
        p.seed = 12345;
        p.trials = 200;
        p.q = 2;
        p.r = 4;
        p.sizes = {4, 6, 8, 10};
        p.threads = 2;
        std::ofstream out(out_dir + "/stability_pilot.csv");
        out << rows_to_csv(run_experiment("stability", p));
    }
    {
        ExperimentParams p;
        p.seed = 2024;
        p.trials = 200;
        p.q = 2;
        p.n = 6;
        p.m = 6;
        p.r = 4;
        p.threads = 2;
        std::ofstream out(out_dir + "/property_f_pilot.csv");
        out << rows_to_csv(run_experiment("propertyF", p));
    }
    std::cout << "fixtures written to " << out_dir << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"isometry toolkit for alternating matrix spaces over prime fields"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "draw a random tuple and print it");
    std::string model = "nait", out_path;
    u32 n = 4, m = 2, q = 2, ss = 2, tt = 2, rr = 1;
    u64 seed = 1, stream = 0;
    sample->add_option("--model", model, "nait | liner | bipnait");
    sample->add_option("-n", n);
    sample->add_option("-m", m);
    sample->add_option("-q", q);
    sample->add_option("--s", ss, "rows (bipnait)");
    sample->add_option("--t", tt, "cols (bipnait)");
    sample->add_option("--r", rr, "tuple length (bipnait)");
    sample->add_option("--seed", seed);
    sample->add_option("--stream", stream);
    sample->add_option("-o,--out", out_path);

    // isometry
    auto* iso = app.add_subcommand("isometry", "test two files for isometry");
    std::string file_g, file_h, algo = "main";
    bool find_one = false, as_json = false;
    u32 r_override = 0, threads = 1;
    u64 cap_gl = 10'000'000, cap_ind = 200'000'000;
    iso->add_option("fileG", file_g)->required();
    iso->add_option("fileH", file_h)->required();
    iso->add_option("--algo", algo, "main | dp | brute");
    iso->add_flag("--find-one", find_one, "stop at the first verified isometry");
    iso->add_option("--r", r_override, "override the individualisation split");
    iso->add_option("--threads", threads);
    iso->add_flag("--json", as_json);
    iso->add_option("--cap-gl", cap_gl, "cap on q^(n^2) for the brute-force scan");
    iso->add_option("--cap-ind", cap_ind, "cap on the individualisation stream size");

    // stable
    auto* stab = app.add_subcommand("stable", "stability / semi-stability of a tuple");
    std::string stable_file;
    u32 flip_r = 0;
    bool semi = false, fast = false;
    u64 cap_subspaces = 1'000'000;
    stab->add_option("file", stable_file)->required();
    stab->add_option("--flip", flip_r, "check the corner tuple at this split instead");
    stab->add_flag("--semi", semi, "check semi-stability");
    stab->add_flag("--fast", fast, "square-case checker without subspace enumeration");
    stab->add_option("--cap-subspaces", cap_subspaces);

    // adjoint
    auto* adj = app.add_subcommand("adjoint", "adjoint-algebra dimensions of a tuple");
    std::string adj_file;
    u32 adj_flip = 0;
    bool adj_json = false;
    adj->add_option("file", adj_file)->required();
    adj->add_option("--flip", adj_flip, "use the corner tuple at this split");
    adj->add_flag("--json", adj_json);

    // subspaces
    auto* subs = app.add_subcommand("subspaces", "count subspaces per dimension");
    u32 sub_n = 3, sub_q = 2;
    u64 sub_cap = 1'000'000;
    subs->add_option("-n", sub_n);
    subs->add_option("-q", sub_q);
    subs->add_option("--cap-subspaces", sub_cap);

    // baer
    auto* baer = app.add_subcommand("baer", "build the class-2 group of a tuple (odd q)");
    std::string baer_file;
    bool baer_check = false;
    u64 baer_cap = 2187;
    baer->add_option("file", baer_file)->required();
    baer->add_flag("--check", baer_check, "verify group axioms, exponent, class");
    baer->add_option("--cap-order", baer_cap);

    // experiment
    auto* exp = app.add_subcommand("experiment", "seeded Monte-Carlo runs, CSV output");
    std::string exp_kind, exp_out;
    ExperimentParams params;
    bool exp_json = false;
    std::vector<u32> sizes, m_list;
    exp->add_option("kind", exp_kind,
                    "stability | propertyF | autsize | semistable-threshold | retry-count")
        ->required();
    exp->add_option("-n", params.n);
    exp->add_option("-m", params.m);
    exp->add_option("-q", params.q);
    exp->add_option("--r", params.r);
    exp->add_option("--sizes", sizes, "s=t values for the stability kind");
    exp->add_option("--m-list", m_list, "m values for the semistable-threshold kind");
    exp->add_option("--trials", params.trials);
    exp->add_option("--seed", params.seed);
    exp->add_option("--threads", params.threads);
    exp->add_option("--cap-subspaces", params.subspace_cap);
    exp->add_flag("--json", exp_json);
    exp->add_option("-o,--out", exp_out);

    // validate
    auto* val = app.add_subcommand("validate", "lint an input file");
    std::string val_file;
    val->add_option("file", val_file)->required();

    // make-fixtures
    auto* fix = app.add_subcommand("make-fixtures", "regenerate committed test fixtures");
    std::string fix_out = "tests/fixtures";
    fix->add_option("--out", fix_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return cmd_sample(model, n, m, q, ss, tt, rr, seed, stream, out_path);
        if (iso->parsed())
            return cmd_isometry(file_g, file_h, algo, find_one, r_override, threads, as_json,
                                cap_gl, cap_ind);
        if (stab->parsed()) return cmd_stable(stable_file, flip_r, semi, fast, cap_subspaces);
        if (adj->parsed()) return cmd_adjoint(adj_file, adj_flip, adj_json);
        if (subs->parsed()) return cmd_subspaces(sub_n, sub_q, sub_cap);
        if (baer->parsed()) return cmd_baer(baer_file, baer_check, baer_cap);
        if (exp->parsed()) {
            params.sizes = sizes;
            params.m_list = m_list;
            return cmd_experiment(exp_kind, params, exp_json, exp_out);
        }
        if (val->parsed()) return cmd_validate(val_file);
        if (fix->parsed()) return cmd_make_fixtures(fix_out);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 3;
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 3;
}
