#include "locstat/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "locstat/errors.hpp"

namespace locstat {

using nlohmann::json;

bool Report::all_passed() const {
    for (const auto& t : tests)
        if (t.verdict == "fail") return false;
    return true;
}

json Report::to_json() const {
    json jt = json::array();
    for (const auto& t : tests) jt.push_back(t.to_json());
    return json{{"config", config_echo},
                {"config_hash", config_hash},
                {"master_seed", master_seed},
                {"version", version},
                {"tests", jt},
                {"extras", extras}};
}

Report Report::from_json(const json& j) {
    Report r;
    r.config_echo = j.at("config");
    r.config_hash = j.at("config_hash").get<std::string>();
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    r.version = j.at("version").get<std::string>();
    for (const auto& t : j.at("tests")) r.tests.push_back(stats::TestReport::from_json(t));
    r.extras = j.value("extras", json::object());
    return r;
}

namespace {

void append_long_list(std::string& out, const std::vector<long>& values) {
    char buf[32];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), i ? ",%ld" : "%ld", values[i]);
        out += buf;
    }
}

}  // namespace

std::string trials_csv(const ExperimentConfig& config, const std::vector<EnsembleLevel>& levels) {
    std::string out =
        "trial,seed,L,ell,n_L,V,E,Eprime,eta_E_A,eta_Eprime_B,zeta_E_A,zeta_Eprime_B,"
        "subcube_counts,excluded\n";
    char buf[256];
    for (const EnsembleLevel& level : levels) {
        for (const TrialRecord& r : level.trials) {
            std::snprintf(buf, sizeof(buf), "%ld,%" PRIu64 ",%ld,%ld,%ld,%.17g,%.17g,%.17g,%ld,%ld,%ld,%ld,",
                          r.index, r.seed, level.side, level.ell, level.n_blocks, level.volume,
                          config.energy, config.energy_prime, r.eta_E_A, r.eta_Ep_B, r.zeta_a(),
                          r.zeta_b());
            out += buf;
            out += '"';
            out += "a:";
            append_long_list(out, r.sub_a);
            out += ";b:";
            append_long_list(out, r.sub_b);
            out += '"';
            out += r.excluded ? ",1\n" : ",0\n";
        }
    }
    return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path.string());
    f << content;
    if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace

std::vector<std::string> emit_report(const Report& report, const ExperimentConfig& config,
                                     const std::vector<EnsembleLevel>& levels,
                                     const std::vector<FigurePayload>& figures,
                                     const std::string& out_dir,
                                     const std::vector<std::string>& formats) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

    std::vector<std::string> written;
    const auto has = [&](const char* fmt) {
        for (const auto& f : formats)
            if (f == fmt) return true;
        return false;
    };

    if (has("json")) {
        const fs::path p = fs::path(out_dir) / "report.json";
        write_file(p, report.to_json().dump(2) + "\n");
        written.push_back(p.string());
    }
    if (has("csv")) {
        const fs::path p = fs::path(out_dir) / "trials.csv";
        write_file(p, trials_csv(config, levels));
        written.push_back(p.string());
    }
    if (has("svg")) {
        for (const FigurePayload& fig : figures) {
            const fs::path p = fs::path(out_dir) / fig.filename;
            write_file(p, fig.svg);
            written.push_back(p.string());
        }
    }
    return written;
}

}  // namespace locstat
