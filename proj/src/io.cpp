#include "citesim/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace citesim {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

long long parse_int(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parameter_error(where + ": '" + s + "' is not an integer");
    }
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parameter_error(where + ": '" + s + "' is not a number");
    }
}

void reject_unknown_keys(const nlohmann::json& j,
                         const std::vector<std::string>& allowed,
                         const std::string& context) {
    if (!j.is_object())
        throw parameter_error(context + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const std::string& a : allowed)
            if (key == a) {
                known = true;
                break;
            }
        if (!known)
            throw parameter_error(context + ": unknown field '" + key + "'");
    }
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw io_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw io_error("cannot move " + tmp.string() + " to " + path + ": " +
                       ec.message());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_team_csv(const std::string& path, const TeamSizeVector& teams) {
    std::string out = "paper_id,team_size\n";
    for (std::size_t i = 0; i < teams.size(); ++i)
        out += std::to_string(i) + "," + std::to_string(teams[i]) + "\n";
    write_file_atomic(path, out);
}

TeamSizeVector read_team_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty() || lines[0] != "paper_id,team_size")
        throw parameter_error(path + ": expected header 'paper_id,team_size'");
    std::vector<long long> sizes;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::string where = path + ": row " + std::to_string(r - 1);
        const auto fields = split_csv_line(lines[r]);
        if (fields.size() != 2)
            throw parameter_error(where + ": expected 2 fields");
        const long long id = parse_int(fields[0], where);
        if (id != static_cast<long long>(r - 1))
            throw parameter_error(where + ": paper_id " + std::to_string(id) +
                                  " out of order");
        sizes.push_back(parse_int(fields[1], where));
    }
    if (sizes.empty()) throw parameter_error(path + ": empty cohort");
    try {
        return load_team_sizes(sizes);
    } catch (const parameter_error& e) {
        throw parameter_error(path + ": " + e.what());
    }
}

std::string distribution_csv(const BinnedDistribution& dist) {
    std::string out = "bin_lo,bin_hi,bin_center,count,density\n";
    for (const Bin& b : dist.bins)
        out += fmt_double(b.lo) + "," + fmt_double(b.hi) + "," +
               fmt_double(b.center) + "," + fmt_double(b.count) + "," +
               fmt_double(b.density) + "\n";
    return out;
}

void write_distribution_csv(const std::string& path,
                            const BinnedDistribution& dist) {
    write_file_atomic(path, distribution_csv(dist));
}

BinnedDistribution read_distribution_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty() || lines[0] != "bin_lo,bin_hi,bin_center,count,density")
        throw parameter_error(
            path + ": expected header 'bin_lo,bin_hi,bin_center,count,density'");
    BinnedDistribution dist;
    double total_count = 0.0;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::string where = path + ": row " + std::to_string(r - 1);
        const auto fields = split_csv_line(lines[r]);
        if (fields.size() != 5)
            throw parameter_error(where + ": expected 5 fields");
        Bin b;
        b.lo = parse_double(fields[0], where);
        b.hi = parse_double(fields[1], where);
        b.center = parse_double(fields[2], where);
        b.count = parse_double(fields[3], where);
        b.density = parse_double(fields[4], where);
        if (!dist.bins.empty() && b.lo < dist.bins.back().lo)
            throw parameter_error(where + ": bins out of order");
        total_count += b.count;
        dist.bins.push_back(b);
    }
    dist.n_total = static_cast<std::uint64_t>(total_count + 0.5);
    return dist;
}

std::string share_csv(const std::vector<PeriodShare>& shares) {
    std::string out = "period_label,events,direct,indirect,direct_share\n";
    for (const PeriodShare& s : shares) {
        out += s.label + "," + std::to_string(s.events) + "," +
               std::to_string(s.direct) + "," + std::to_string(s.indirect) + ",";
        if (s.share) out += fmt_double(*s.share);
        out += "\n";
    }
    return out;
}

void write_share_csv(const std::string& path,
                     const std::vector<PeriodShare>& shares) {
    write_file_atomic(path, share_csv(shares));
}

std::string gm_csv(const std::vector<TeamGmBucket>& buckets) {
    std::string out = "team_lo,team_hi,n_papers,gm\n";
    for (const TeamGmBucket& b : buckets)
        out += fmt_double(b.lo) + "," + fmt_double(b.hi) + "," +
               std::to_string(b.n_papers) + "," + fmt_double(b.gm) + "\n";
    return out;
}

void write_gm_csv(const std::string& path,
                  const std::vector<TeamGmBucket>& buckets) {
    write_file_atomic(path, gm_csv(buckets));
}

nlohmann::json kernel_to_json(const KernelSpec& kernel) {
    nlohmann::json j;
    j["mode"] = to_string(kernel.mode);
    j["alpha"] = kernel.alpha;
    j["epsilon"] = kernel.epsilon;
    j["beta"] = kernel.beta;
    nlohmann::json t;
    switch (kernel.transform.kind) {
        case TransformKind::identity: t["kind"] = "identity"; break;
        case TransformKind::power: t["kind"] = "power"; break;
        case TransformKind::constant: t["kind"] = "constant"; break;
    }
    t["c"] = kernel.transform.c;
    t["gamma"] = kernel.transform.gamma;
    t["cap"] = kernel.transform.cap;
    j["transform"] = std::move(t);
    j["attract_exponent"] = kernel.attract_exponent;
    if (kernel.influence) {
        const InfluenceSpec& inf = *kernel.influence;
        nlohmann::json ji;
        ji["g_kind"] = inf.g_kind == GKind::identity ? "identity" : "power";
        ji["g_exponent"] = inf.g_exponent;
        nlohmann::json jd;
        if (inf.dist.kind == InfluenceDistKind::constant) {
            jd["kind"] = "constant";
            jd["value"] = inf.dist.value;
        } else {
            jd["kind"] = "powerlaw";
            jd["exponent"] = inf.dist.exponent;
            jd["max_value"] = inf.dist.max_value;
        }
        ji["distribution"] = std::move(jd);
        ji["mean_g"] = inf.mean_g;
        j["influence"] = std::move(ji);
    }
    return j;
}

KernelSpec kernel_from_json(const nlohmann::json& j) {
    reject_unknown_keys(j,
                        {"mode", "alpha", "epsilon", "beta", "transform",
                         "attract_exponent", "influence"},
                        "kernel");
    KernelSpec k;
    if (!j.contains("mode"))
        throw parameter_error("kernel: missing 'mode'");
    k.mode = kernel_mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("alpha")) k.alpha = j.at("alpha").get<double>();
    if (j.contains("epsilon")) k.epsilon = j.at("epsilon").get<double>();
    if (j.contains("beta")) k.beta = j.at("beta").get<double>();
    if (j.contains("transform")) {
        const nlohmann::json& t = j.at("transform");
        reject_unknown_keys(t, {"kind", "c", "gamma", "cap"}, "kernel.transform");
        if (t.contains("kind")) {
            const std::string kind = t.at("kind").get<std::string>();
            if (kind == "identity")
                k.transform.kind = TransformKind::identity;
            else if (kind == "power")
                k.transform.kind = TransformKind::power;
            else if (kind == "constant")
                k.transform.kind = TransformKind::constant;
            else
                throw parameter_error("kernel.transform: unknown kind '" + kind +
                                      "'");
        }
        if (t.contains("c")) k.transform.c = t.at("c").get<double>();
        if (t.contains("gamma")) k.transform.gamma = t.at("gamma").get<double>();
        if (t.contains("cap")) k.transform.cap = t.at("cap").get<int>();
    }
    if (j.contains("attract_exponent"))
        k.attract_exponent = j.at("attract_exponent").get<double>();
    if (j.contains("influence")) {
        const nlohmann::json& ji = j.at("influence");
        reject_unknown_keys(ji, {"g_kind", "g_exponent", "distribution", "mean_g"},
                            "kernel.influence");
        InfluenceSpec inf;
        if (ji.contains("g_kind")) {
            const std::string g = ji.at("g_kind").get<std::string>();
            if (g == "identity")
                inf.g_kind = GKind::identity;
            else if (g == "power")
                inf.g_kind = GKind::power;
            else
                throw parameter_error("kernel.influence: unknown g_kind '" + g +
                                      "'");
        }
        if (ji.contains("g_exponent"))
            inf.g_exponent = ji.at("g_exponent").get<double>();
        if (ji.contains("distribution")) {
            const nlohmann::json& jd = ji.at("distribution");
            reject_unknown_keys(jd, {"kind", "value", "exponent", "max_value"},
                                "kernel.influence.distribution");
            if (jd.contains("kind")) {
                const std::string kind = jd.at("kind").get<std::string>();
                if (kind == "constant")
                    inf.dist.kind = InfluenceDistKind::constant;
                else if (kind == "powerlaw")
                    inf.dist.kind = InfluenceDistKind::powerlaw;
                else
                    throw parameter_error(
                        "kernel.influence.distribution: unknown kind '" + kind +
                        "'");
            }
            if (jd.contains("value")) inf.dist.value = jd.at("value").get<double>();
            if (jd.contains("exponent"))
                inf.dist.exponent = jd.at("exponent").get<double>();
            if (jd.contains("max_value"))
                inf.dist.max_value = jd.at("max_value").get<int>();
        }
        if (ji.contains("mean_g")) inf.mean_g = ji.at("mean_g").get<double>();
        k.influence = inf;
    }
    resolve_influence_mean(k);
    k.validate();
    return k;
}

void write_run_json(const std::string& path, const RunResult& rr,
                    const SimulationConfig& cfg, const KernelSpec& kernel) {
    nlohmann::json j;
    j["format"] = "citesim-run-v1";
    j["n_papers"] = cfg.n_papers;
    j["total_events"] = cfg.total_events;
    j["seed"] = rr.seed;
    j["replicate_id"] = rr.replicate_id;
    j["kernel"] = kernel_to_json(kernel);
    nlohmann::json snaps = nlohmann::json::array();
    for (const Snapshot& s : rr.snapshots) {
        nlohmann::json js;
        js["label"] = s.label;
        js["events"] = s.events;
        js["n_cit"] = s.n_cit;
        js["n_direct"] = s.n_direct;
        snaps.push_back(std::move(js));
    }
    j["snapshots"] = std::move(snaps);
    nlohmann::json periods = nlohmann::json::array();
    for (const PeriodTally& p : rr.periods) {
        nlohmann::json jp;
        jp["label"] = p.label;
        jp["events"] = p.events;
        jp["direct"] = p.direct;
        jp["indirect"] = p.indirect;
        periods.push_back(std::move(jp));
    }
    j["periods"] = std::move(periods);
    write_file_atomic(path, j.dump(2) + "\n");
}

RunResult read_run_json(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw parameter_error(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || j.value("format", "") != "citesim-run-v1")
        throw parameter_error(path + ": not a citesim run file");
    RunResult rr;
    rr.seed = j.at("seed").get<std::uint64_t>();
    rr.replicate_id = j.at("replicate_id").get<int>();
    for (const nlohmann::json& js : j.at("snapshots")) {
        Snapshot s;
        s.label = js.at("label").get<std::string>();
        s.events = js.at("events").get<std::uint64_t>();
        s.n_cit = js.at("n_cit").get<std::vector<std::uint32_t>>();
        s.n_direct = js.at("n_direct").get<std::vector<std::uint32_t>>();
        if (s.n_cit.size() != s.n_direct.size())
            throw parameter_error(path + ": snapshot '" + s.label +
                                  "' has mismatched arrays");
        rr.snapshots.push_back(std::move(s));
    }
    for (const nlohmann::json& jp : j.at("periods")) {
        PeriodTally p;
        p.label = jp.at("label").get<std::string>();
        p.events = jp.at("events").get<std::uint64_t>();
        p.direct = jp.at("direct").get<std::uint64_t>();
        p.indirect = jp.at("indirect").get<std::uint64_t>();
        rr.periods.push_back(std::move(p));
    }
    if (rr.snapshots.empty())
        throw parameter_error(path + ": run file has no snapshots");
    return rr;
}

void write_fit_json(const std::string& path, const FitResult& fit) {
    nlohmann::json j;
    j["format"] = "citesim-fit-v1";
    j["axes"] = fit.axis_names;
    j["best_params"] = fit.best_params;
    j["best_objective"] = fit.best_objective;
    nlohmann::json surface = nlohmann::json::array();
    for (const GridPoint& p : fit.surface) {
        nlohmann::json jp;
        nlohmann::json params;
        for (std::size_t a = 0; a < fit.axis_names.size(); ++a)
            params[fit.axis_names[a]] = p.values[a];
        jp["params"] = std::move(params);
        jp["objective"] = p.objective;
        surface.push_back(std::move(jp));
    }
    j["surface"] = std::move(surface);
    write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace citesim
