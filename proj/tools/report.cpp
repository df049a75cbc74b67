#include "report.hpp"

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace hamcover::cli {

namespace {

template <typename T>
json opt(const std::optional<T> &v) {
    return v ? json(*v) : json(nullptr);
}

json phase_json(const CoverStats &st) {
    json out = json::object();
    for (const auto &[phase, ms] : st.phase_ms) {
        out[phase] = ms;
    }
    return out;
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

}  // namespace

json RunConfig::to_json() const {
    return json{{"subcommand", subcommand}, {"graph", graph},   {"out", out},         {"cover", cover},
                {"forbid", forbid},         {"cycles_out", cycles_out},               {"format", format},
                {"n", opt(n)},              {"p", opt(p)},      {"seed", seed},       {"seeds", opt(seeds)},
                {"alpha", opt(alpha)},      {"s", opt(s)},      {"g", opt(g)},        {"l", opt(l)},
                {"trials", trials},         {"budget", opt(budget)},                  {"pack", opt(pack)},
                {"jobs", jobs}};
}

json to_json(const ExpansionReport &r) {
    return json{{"property", to_string(r.property)},
                {"params", {{"s", r.s}, {"g", r.g}, {"l", r.l}}},
                {"verdict", to_string(r.verdict)},
                {"witness", r.witness},
                {"witness_b", r.witness_b},
                {"trials", r.trials},
                {"note", r.note}};
}

json to_json(const DiameterCheck &d) {
    return json{{"diameter", opt(d.diameter)}, {"bound", d.bound}, {"ok", d.ok}, {"note", d.note}};
}

json to_json(const CoverLosses &l, const CoverStats &st) {
    return json{{"merge_lost_matching_edges", l.merge_lost},
                {"soft_edges_broken", l.soft_broken},
                {"matching_edges_missed_once", l.once_uncovered},
                {"protected_retries", l.hard_retries},
                {"pruned_residual_edges", st.pruned_edges},
                {"packing_shortfall", st.packing_target - st.h}};
}

json cover_report(const CoverOutcome &outcome, const RunConfig &config) {
    const auto &st = outcome.stats;
    const double avg_half = st.n == 0 ? 0.0 : static_cast<double>(st.m) / static_cast<double>(st.n);
    json r{{"config", config.to_json()},
           {"n", st.n},
           {"m", st.m},
           {"delta_max", st.delta_max},
           {"delta_min", st.delta_min},
           {"h", st.h},
           {"packing_target", st.packing_target},
           {"color_classes", st.color_classes},
           {"cover_size", outcome.ok() ? json(st.cover_size) : json(nullptr)},
           {"lower_bound", (st.delta_max + 1) / 2},
           {"ratio", outcome.ok() && avg_half > 0 ? json(static_cast<double>(st.cover_size) / avg_half) : json(nullptr)},
           {"losses", to_json(st.losses, st)},
           {"phase_timings_ms", phase_json(st)},
           {"valid", outcome.ok()}};
    if (!outcome.ok()) {
        r["failure"] = {{"phase", outcome.failed_phase}, {"detail", outcome.failure}};
    }
    return r;
}

json to_json(const ExperimentReport &r) {
    const auto &st = r.stats;
    json out{{"n", r.n},
             {"p", r.p},
             {"seed", r.seed},
             {"alpha", r.alpha},
             {"m", st.m},
             {"delta_max", st.delta_max},
             {"delta_min", st.delta_min},
             {"h", st.h},
             {"cover_size", r.valid ? json(st.cover_size) : json(nullptr)},
             {"ratio", r.valid ? json(r.ratio) : json(nullptr)},
             {"lower_bound_ok", r.lower_bound_ok},
             {"losses", to_json(st.losses, st)},
             {"phase_timings_ms", phase_json(st)},
             {"valid", r.valid},
             {"notes", r.notes}};
    if (r.checks) {
        out["checks"] = {{"s", r.checks->params.s},
                         {"g", r.checks->params.g},
                         {"l", r.checks->params.l},
                         {"asymptotic_regime", r.checks->params.asymptotic_regime},
                         {"small_expansion", to_string(r.checks->small)},
                         {"large_expansion", to_string(r.checks->large)},
                         {"diameter", to_json(r.checks->diameter)}};
    }
    if (!r.valid) {
        out["failure"] = {{"phase", r.failed_phase}, {"detail", r.failure}};
    }
    return out;
}

std::string csv_header() {
    return "seed,n,p,alpha,m,delta_max,h,cover_size,ratio,merge_lost,soft_broken,missed_once,pruned,"
           "packing_ms,coloring_ms,covering_ms,validation_ms,valid,failure";
}

std::string csv_row(const ExperimentReport &r) {
    const auto &st = r.stats;
    auto phase = [&](const char *name) {
        auto it = st.phase_ms.find(name);
        return it == st.phase_ms.end() ? 0.0 : it->second;
    };
    std::ostringstream row;
    row << std::setprecision(10) << r.seed << ',' << r.n << ',' << r.p << ',' << r.alpha << ',' << st.m << ','
        << st.delta_max << ',' << st.h << ',';
    if (r.valid) {
        row << st.cover_size << ',' << r.ratio;
    } else {
        row << ',';
    }
    row << ',' << st.losses.merge_lost << ',' << st.losses.soft_broken << ',' << st.losses.once_uncovered << ','
        << st.pruned_edges << ',' << std::fixed << std::setprecision(3) << phase("packing") << ',' << phase("coloring")
        << ',' << phase("covering") << ',' << phase("validation") << ',' << (r.valid ? "true" : "false") << ','
        << csv_escape(r.valid ? "" : r.failed_phase + ": " + r.failure);
    return row.str();
}

std::vector<HamiltonCycle> read_cycles(std::istream &in) {
    std::vector<HamiltonCycle> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        HamiltonCycle c;
        std::string tok;
        while (fields >> tok) {
            try {
                std::size_t used = 0;
                const unsigned long v = std::stoul(tok, &used);
                if (used != tok.size() || v > std::numeric_limits<Vertex>::max()) {
                    throw std::invalid_argument(tok);
                }
                c.vertices.push_back(static_cast<Vertex>(v));
            } catch (const std::logic_error &) {
                throw GraphError("cover file line " + std::to_string(line_no) + ": bad vertex '" + tok + "'");
            }
        }
        if (!c.vertices.empty()) {
            out.push_back(std::move(c));
        }
    }
    return out;
}

void write_cycles(std::ostream &out, const std::vector<HamiltonCycle> &cycles) {
    for (const auto &c : cycles) {
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            out << (i == 0 ? "" : " ") << c.vertices[i];
        }
        out << '\n';
    }
}

}  // namespace hamcover::cli
