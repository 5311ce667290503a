#pragma once

#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "risob/grid.hpp"
#include "risob/norms.hpp"
#include "risob/profile.hpp"
#include "risob/young.hpp"

namespace risob {

using nlohmann::json;

inline std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

/// CSV `value,weight` rows (header required).
inline WeightedSamples read_samples_csv(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "value")
        throw invalid_input("samples CSV needs a value,weight header");
    std::vector<double> v, w;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        v.push_back(std::stod(rows[i][0]));
        w.push_back(std::stod(rows[i][1]));
    }
    return {v, w};
}

/// CSV `s,v`: breakpoints (right endpoints) and step values.
inline DecreasingProfile read_profile_csv(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "s")
        throw invalid_input("profile CSV needs an s,v header");
    std::vector<double> s, v;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        s.push_back(std::stod(rows[i][0]));
        v.push_back(std::stod(rows[i][1]));
    }
    return {s, v};
}

inline void write_profile_csv(const std::string& path, const DecreasingProfile& f) {
    std::ofstream out(path);
    out << "s,v\n";
    out << std::setprecision(12);
    for (std::size_t i = 0; i < f.steps(); ++i)
        out << f.breakpoints()[i] << "," << f.step_values()[i] << "\n";
}

/// CSV `i,j,u1,u2` rows on a given domain.
inline VectorField2D read_field_csv(const std::string& path, const GridDomain& d) {
    const auto rows = read_csv(path);
    if (rows.empty() || rows[0].size() < 4 || rows[0][0] != "i")
        throw invalid_input("field CSV needs an i,j,u1,u2 header");
    auto u = VectorField2D::zeros(d);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const int i = std::stoi(rows[r][0]), j = std::stoi(rows[r][1]);
        if (!d.inside(i, j)) throw invalid_input("field CSV cell outside the grid");
        u.u1[d.idx(i, j)] = std::stod(rows[r][2]);
        u.u2[d.idx(i, j)] = std::stod(rows[r][3]);
    }
    return u;
}

/// `{"kind":"power","p":2.0}` and friends; `table` kind loads a CSV `t,a`.
inline YoungFunction parse_young(const json& spec) {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "power") return YoungFunction::power(spec.at("p").get<double>());
    if (kind == "powerlog")
        return YoungFunction::power_log(spec.at("p").get<double>(), spec.at("alpha").get<double>());
    if (kind == "powerloglog")
        return YoungFunction::power_log_log(spec.at("p").get<double>(),
                                            spec.at("alpha").get<double>(),
                                            spec.at("beta").get<double>());
    if (kind == "exppower") return YoungFunction::exp_power(spec.at("beta").get<double>());
    if (kind == "linf") return YoungFunction::linf_indicator();
    if (kind == "table") {
        const auto rows = read_csv(spec.at("path").get<std::string>());
        if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "t")
            throw invalid_input("young table CSV needs a t,a header");
        std::vector<double> t, a;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            t.push_back(std::stod(rows[i][0]));
            a.push_back(std::stod(rows[i][1]));
        }
        return YoungFunction::from_density_table(std::move(t), std::move(a));
    }
    throw unsupported_space("unknown young kind: " + kind);
}

/// Shorthand young spec: power:2, powerlog:3:1, exppower:1, linf.
inline YoungFunction parse_young_shorthand(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.empty()) throw invalid_input("empty young spec");
    if (parts[0] == "linf") return YoungFunction::linf_indicator();
    if (parts[0] == "power" && parts.size() == 2)
        return YoungFunction::power(std::stod(parts[1]));
    if (parts[0] == "powerlog" && parts.size() == 3)
        return YoungFunction::power_log(std::stod(parts[1]), std::stod(parts[2]));
    if (parts[0] == "powerloglog" && parts.size() == 4)
        return YoungFunction::power_log_log(std::stod(parts[1]), std::stod(parts[2]),
                                            std::stod(parts[3]));
    if (parts[0] == "exppower" && parts.size() == 2)
        return YoungFunction::exp_power(std::stod(parts[1]));
    throw invalid_input("bad young shorthand: " + s + " (try JSON)");
}

inline YoungFunction parse_young_arg(const std::string& s) {
    if (!s.empty() && s.front() == '{') return parse_young(json::parse(s));
    return parse_young_shorthand(s);
}

/// `{"family":"lorentz","p":2.0,"q":1.0,"L":1.0}` and the other families.
inline NormSpec parse_norm_spec(const json& spec) {
    const std::string family = spec.at("family").get<std::string>();
    const double L = spec.value("L", inf);
    if (family == "lebesgue") return NormSpec::lebesgue(spec.at("p").get<double>(), L);
    if (family == "lorentz")
        return NormSpec::lorentz(spec.at("p").get<double>(), spec.at("q").get<double>(), L);
    if (family == "lorentz_zygmund")
        return NormSpec::lorentz_zygmund(spec.at("p").get<double>(), spec.at("q").get<double>(),
                                         spec.at("alpha").get<double>(), L);
    if (family == "glz") return NormSpec::glz(spec.at("p").get<double>(), L);
    if (family == "orlicz") return NormSpec::orlicz(parse_young(spec.at("young")), L);
    if (family == "orlicz_lorentz")
        return NormSpec::orlicz_lorentz(parse_young(spec.at("young")), spec.at("q").get<double>(),
                                        L);
    if (family == "lambda") {
        WeightTable nu;
        for (const auto& row : spec.at("weight")) {
            nu.breakpoints.push_back(row.at(0).get<double>());
            nu.values.push_back(row.at(1).get<double>());
        }
        return NormSpec::lambda_weighted(parse_young(spec.at("young")), std::move(nu), L);
    }
    throw unsupported_space("unknown norm family: " + family);
}

/// Shorthand: lebesgue:2, lorentz:2:1, lz:2:2:1, glz:2, orlicz:<young shorthand>.
inline NormSpec parse_norm_arg(const std::string& s, double L) {
    if (!s.empty() && s.front() == '{') {
        auto j = json::parse(s);
        if (!j.contains("L")) j["L"] = L;
        return parse_norm_spec(j);
    }
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.empty()) throw invalid_input("empty norm spec");
    const auto fam = parts[0];
    const auto needs = [&](std::size_t k) {
        if (parts.size() != k) throw invalid_input("bad norm shorthand: " + s);
    };
    if (fam == "lebesgue") {
        needs(2);
        return NormSpec::lebesgue(parts[1] == "inf" ? inf : std::stod(parts[1]), L);
    }
    if (fam == "lorentz") {
        needs(3);
        return NormSpec::lorentz(std::stod(parts[1]),
                                 parts[2] == "inf" ? inf : std::stod(parts[2]), L);
    }
    if (fam == "lz") {
        needs(4);
        return NormSpec::lorentz_zygmund(parts[1] == "inf" ? inf : std::stod(parts[1]),
                                         std::stod(parts[2]), std::stod(parts[3]), L);
    }
    if (fam == "glz") {
        needs(2);
        return NormSpec::glz(std::stod(parts[1]), L);
    }
    if (fam == "orlicz") {
        std::string rest = s.substr(fam.size() + 1);
        return NormSpec::orlicz(parse_young_shorthand(rest), L);
    }
    throw invalid_input("bad norm shorthand: " + s);
}

/// 12-significant-digit number rendering for reports.
inline json report_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return json::parse(os.str(), nullptr, false).is_discarded() ? json(x)
                                                                : json::parse(os.str());
}

inline json make_report(const std::string& command) {
    json j;
    j["schema"] = "1";
    j["command"] = command;
    j["generated_at"] = static_cast<long long>(::time(nullptr));
    return j;
}

}  // namespace risob
