// Batch front end: rearrangement-invariant norms, optimal Sobolev-embedding
// targets for symmetric-gradient spaces, moduli of continuity, and the
// desk-scale verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "risob/embedding.hpp"
#include "risob/golden.hpp"
#include "risob/hardy.hpp"
#include "risob/io.hpp"
#include "risob/kfunctional.hpp"
#include "risob/truncation.hpp"
#include "risob/young_sobolev.hpp"
#include "risob/zygmund.hpp"

using namespace risob;

namespace {

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << report.dump(2) << "\n";
    }
}

// classify a shorthand young spec into the symbolic growth table when possible
bool symbolic_class(const std::string& arg, AsymptoticClass& cls) {
    if (arg.rfind("power:", 0) == 0) {
        const double p = std::stod(arg.substr(6));
        cls = AsymptoticClass::two_sided(p, 0.0, p, 0.0);
        return true;
    }
    if (arg.rfind("powerlog:", 0) == 0) {
        std::stringstream ss(arg.substr(9));
        std::string a, b;
        std::getline(ss, a, ':');
        std::getline(ss, b, ':');
        cls = AsymptoticClass::two_sided(std::stod(a), 0.0, std::stod(a), std::stod(b));
        return true;
    }
    return false;
}

int cmd_rearrange(const std::string& input, const std::string& output,
                  const std::string& report_out) {
    const auto samples = read_samples_csv(input);
    const auto prof = rearrange(samples);
    if (!output.empty()) write_profile_csv(output, prof);
    auto rep = make_report("rearrange");
    rep["total_measure"] = report_number(prof.total_length());
    rep["steps"] = prof.steps();
    rep["sup"] = report_number(prof.sup_value());
    rep["integral"] = report_number(prof.integral());
    emit(rep, report_out);
    return 0;
}

int cmd_norm(const std::string& spec_arg, const std::string& profile_path, double L,
             const std::string& report_out) {
    const auto prof = read_profile_csv(profile_path);
    const double len = L > 0.0 ? L : prof.total_length();
    const auto spec = parse_norm_arg(spec_arg, len);
    auto rep = make_report("norm");
    rep["family"] = spec.describe();
    rep["value"] = report_number(norm(spec, prof));
    emit(rep, report_out);
    return 0;
}

int cmd_target(const std::string& young_arg, int n, const std::string& setting_arg, bool modulus,
               const std::string& report_out) {
    table_setting setting = table_setting::finite_e10;
    if (setting_arg == "finite" || setting_arg == "finite-e10")
        setting = table_setting::finite_e10;
    else if (setting_arg == "finite-e1")
        setting = table_setting::finite_e1;
    else if (setting_arg == "rn-e10")
        setting = table_setting::rn_e10;
    else if (setting_arg == "rn-e1")
        setting = table_setting::rn_e1;
    else
        throw invalid_input("unknown setting: " + setting_arg);

    auto rep = make_report("target");
    rep["n"] = n;
    rep["setting"] = setting_arg;
    const auto A = parse_young_arg(young_arg);
    rep["young"] = A.describe();

    AsymptoticClass cls;
    if (symbolic_class(young_arg, cls)) {
        const auto d = zygmund_table(cls, n, setting);
        rep["orlicz_target"] = d.orlicz;
        rep["ri_target"] = d.ri;
        const bool supercritical =
            (cls.p > n) || (cls.p == n && cls.alpha > n - 1.0);
        if ((setting == table_setting::rn_e1) && supercritical)
            rep["note"] = "equivalent to L^inf intersected with L^A";
    } else {
        // numeric handles
        const auto an = sobolev_conjugate(A, n);
        rep["collapse"] = an.collapse;
        rep["regularized_near_zero"] = an.regularized;
        if (an.collapse) {
            rep["orlicz_target"] = "L^inf";
            rep["ri_target"] = "L^inf";
        } else {
            rep["orlicz_target"] = "L^{A_n} (numeric handle)";
            const auto hat = hat_A(A, n);
            rep["ri_target"] = "L(hatA, n) (numeric handle)";
            rep["hat_flat_density_flag"] = hat.flat_density_flag;
            json samples = json::array();
            for (double t = 1.0; t <= 1e3; t *= 10.0)
                samples.push_back({report_number(t), report_number(an.A_n.value(t)),
                                   report_number(hat.A_hat.value(t))});
            rep["An_hatA_samples"] = samples;
        }
    }
    // L^inf verdict on a unit-measure domain
    try {
        rep["linf_embedding"] = linf_embedding_check(NormSpec::orlicz(A, 1.0), n, 1.0);
    } catch (const std::exception& e) {
        rep["linf_embedding"] = std::string("error: ") + e.what();
    }
    if (modulus) {
        try {
            continuity_kernels k(A, n);
            json table = json::array();
            for (double r = 1e-6; r <= 1.1e-2; r *= 10.0)
                table.push_back({report_number(r), report_number(k.sigma(r))});
            rep["sigma"] = table;
            rep["regularized_conjugate"] = k.regularized_conjugate();
        } catch (const std::exception& e) {
            rep["sigma"] = std::string("error: ") + e.what();
        }
    }
    emit(rep, report_out);
    return 0;
}

int cmd_modulus(const std::string& young_arg, int n, const std::string& report_out) {
    const auto A = parse_young_arg(young_arg);
    continuity_kernels k(A, n);
    auto rep = make_report("modulus");
    rep["xi_finite"] = k.xi_finite();
    rep["regularized_conjugate"] = k.regularized_conjugate();
    json table = json::array();
    for (double r = 1e-6; r <= 1.1e-2; r *= 10.0)
        table.push_back({report_number(r), report_number(k.sigma(r))});
    rep["sigma"] = table;
    emit(rep, report_out);
    return 0;
}

int cmd_verify_hardy(const std::string& x_arg, const std::string& y_arg, int n, double L,
                     const std::string& family_arg, const std::string& csv_out,
                     const std::string& witness_out, const std::string& report_out) {
    const auto X = parse_norm_arg(x_arg, L);
    const auto Y = parse_norm_arg(y_arg, L);
    TrialFamily family = TrialFamily::random_steps(200, 1, L);
    {
        std::stringstream ss(family_arg);
        std::string kind;
        std::getline(ss, kind, ':');
        if (kind == "random") {
            std::string cnt, seed;
            std::getline(ss, cnt, ':');
            std::getline(ss, seed, ':');
            family = TrialFamily::random_steps(cnt.empty() ? 200 : std::stoi(cnt),
                                               seed.empty() ? 1 : std::stoull(seed), L);
        } else if (kind == "indicator") {
            std::vector<double> ks;
            for (double k = 1.0; k <= 1000.0; k *= 2.0) ks.push_back(k);
            family = TrialFamily::indicator(ks, L);
        } else if (kind == "power") {
            std::vector<double> as;
            for (double a = 0.05; a < 0.7; a += 0.05) as.push_back(a);
            family = TrialFamily::power(as, L);
        } else {
            throw invalid_input("unknown trial family: " + family_arg);
        }
    }
    const auto rep_data = ratio_sup(X, Y, n, L, family);
    if (!csv_out.empty()) {
        std::ofstream out(csv_out);
        out << "trial_id,ratio\n" << std::setprecision(12);
        int id = 0;
        for (const auto& [scale, r] : rep_data.scale_ratios) out << id++ << "," << r << "\n";
    }
    if (!witness_out.empty()) write_profile_csv(witness_out, rep_data.witness);
    auto rep = make_report("verify-hardy");
    rep["best_ratio"] = report_number(rep_data.best_ratio);
    rep["slope_estimate"] = report_number(rep_data.slope);
    if (!witness_out.empty()) rep["witness_profile_path"] = witness_out;
    rep["trials"] = rep_data.scale_ratios.size();
    emit(rep, report_out);
    return std::isfinite(rep_data.best_ratio) && rep_data.best_ratio > 0.0 ? 0 : 3;
}

int cmd_verify_k(const std::string& profile_path, double t, const std::string& couple, int n,
                 const std::string& report_out) {
    const auto f = read_profile_csv(profile_path);
    auto rep = make_report("verify-k");
    rep["t"] = report_number(t);
    if (couple == "l1-linf") {
        const double predicted = k_exact_l1_linf(f, t);
        const auto res = k_bruteforce(f, t, NormSpec::lebesgue(1.0), NormSpec::lebesgue(inf));
        rep["predicted"] = report_number(predicted);
        rep["bruteforce"] = report_number(res.value);
        rep["ratio"] = report_number(predicted > 0.0 ? res.value / predicted : 1.0);
        emit(rep, report_out);
        return predicted <= 0.0 || std::fabs(res.value / predicted - 1.0) < 0.01 ? 0 : 3;
    }
    if (couple == "l1-ln1") {
        rep["predicted"] = report_number(k_l1_ln1_predicted(f, t, n));
        rep["bruteforce"] = nullptr;
        rep["ratio"] = nullptr;
        emit(rep, report_out);
        return 0;
    }
    throw invalid_input("unknown couple: " + couple);
}

int cmd_verify_sobolev2d(int grid, int fields, std::uint64_t seed, const std::string& x_arg,
                         const std::string& y_arg, const std::string& report_out) {
    const auto d = GridDomain::square(grid, 1.0 / grid);
    const double L = d.measure();
    const auto X = parse_norm_arg(x_arg, L);
    const auto Y = parse_norm_arg(y_arg, L);
    std::vector<VectorField2D> us;
    for (int s = 0; s < fields; ++s)
        us.push_back(BumpFieldSpec::seeded(seed + static_cast<std::uint64_t>(s)).sample(d));
    const auto r = verify_sobolev_2d(d, us, X, Y);
    auto rep = make_report("verify-sobolev2d");
    rep["grid"] = grid;
    rep["fields"] = fields;
    rep["max_ratio"] = report_number(r.max_ratio);
    rep["pointwise_const"] = report_number(r.pointwise_const);
    emit(rep, report_out);
    return std::isfinite(r.max_ratio) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rearrangement-invariant norms and symmetric-gradient embedding toolbox"};
    app.require_subcommand(1);
    std::string report_out;
    app.add_option("--report", report_out, "write the JSON report here instead of stdout");

    auto* c_re = app.add_subcommand("rearrange", "decreasing rearrangement of weighted samples");
    std::string re_in, re_out;
    c_re->add_option("--input", re_in, "CSV value,weight")->required();
    c_re->add_option("--output", re_out, "profile CSV s,v");

    auto* c_nm = app.add_subcommand("norm", "norm of a decreasing profile");
    std::string nm_spec, nm_prof;
    double nm_L = 0.0;
    c_nm->add_option("--spec", nm_spec, "norm spec (shorthand or JSON)")->required();
    c_nm->add_option("--profile", nm_prof, "profile CSV")->required();
    c_nm->add_option("--L", nm_L, "interval length (default: profile length)");

    auto* c_tg = app.add_subcommand("target", "optimal embedding targets for a Young class");
    std::string tg_young, tg_setting = "finite";
    int tg_n = 2;
    bool tg_mod = false;
    c_tg->add_option("--young", tg_young)->required();
    c_tg->add_option("--n", tg_n);
    c_tg->add_option("--setting", tg_setting, "finite|finite-e1|rn-e10|rn-e1");
    c_tg->add_flag("--modulus", tg_mod, "include the continuity modulus table");

    auto* c_md = app.add_subcommand("modulus", "continuity modulus sigma_A");
    std::string md_young;
    int md_n = 2;
    c_md->add_option("--young", md_young)->required();
    c_md->add_option("--n", md_n);

    auto* c_vh = app.add_subcommand("verify-hardy", "reduction-operator ratio probes");
    std::string vh_x, vh_y, vh_family = "random:200:1", vh_csv, vh_witness;
    int vh_n = 2;
    double vh_L = 1.0;
    c_vh->add_option("--x", vh_x)->required();
    c_vh->add_option("--y", vh_y)->required();
    c_vh->add_option("--n", vh_n);
    c_vh->add_option("--L", vh_L);
    c_vh->add_option("--family", vh_family, "random:count:seed|power|indicator");
    c_vh->add_option("--csv", vh_csv, "trial_id,ratio CSV output");
    c_vh->add_option("--witness", vh_witness, "witness profile CSV output");

    auto* c_vk = app.add_subcommand("verify-k", "K-functional evaluations");
    std::string vk_prof, vk_couple = "l1-linf";
    double vk_t = 0.5;
    int vk_n = 2;
    c_vk->add_option("--profile", vk_prof)->required();
    c_vk->add_option("--t", vk_t);
    c_vk->add_option("--couple", vk_couple, "l1-linf|l1-ln1");
    c_vk->add_option("--n", vk_n);

    auto* c_vs = app.add_subcommand("verify-sobolev2d", "grid Sobolev ratio probes");
    int vs_grid = 64, vs_fields = 10;
    std::uint64_t vs_seed = 1;
    std::string vs_x = "lebesgue:1", vs_y = "lorentz:2:1";
    c_vs->add_option("--grid", vs_grid);
    c_vs->add_option("--fields", vs_fields);
    c_vs->add_option("--seed", vs_seed);
    c_vs->add_option("--x", vs_x);
    c_vs->add_option("--y", vs_y);

    auto* c_go = app.add_subcommand("golden", "print the symbolic reference tables");
    std::string go_out;
    c_go->add_option("--out", go_out, "write to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_re->parsed()) return cmd_rearrange(re_in, re_out, report_out);
        if (c_nm->parsed()) return cmd_norm(nm_spec, nm_prof, nm_L, report_out);
        if (c_tg->parsed()) return cmd_target(tg_young, tg_n, tg_setting, tg_mod, report_out);
        if (c_md->parsed()) return cmd_modulus(md_young, md_n, report_out);
        if (c_vh->parsed())
            return cmd_verify_hardy(vh_x, vh_y, vh_n, vh_L, vh_family, vh_csv, vh_witness,
                                    report_out);
        if (c_vk->parsed()) return cmd_verify_k(vk_prof, vk_t, vk_couple, vk_n, report_out);
        if (c_vs->parsed())
            return cmd_verify_sobolev2d(vs_grid, vs_fields, vs_seed, vs_x, vs_y, report_out);
        if (c_go->parsed()) {
            const auto table = golden_table();
            if (go_out.empty())
                std::cout << table;
            else
                std::ofstream(go_out) << table;
            return 0;
        }
    } catch (const unsupported_space& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
