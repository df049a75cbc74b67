#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamcover/cover.hpp"
#include "hamcover/expander_check.hpp"

namespace hamcover::cli {

using nlohmann::json;

struct RunConfig {
    std::string subcommand;
    std::string graph;
    std::string out;
    std::string cover;
    std::string forbid;
    std::string cycles_out;
    std::string format;
    std::optional<std::size_t> n;
    std::optional<double> p;
    std::uint64_t seed = 0;
    std::optional<std::size_t> seeds;
    std::optional<double> alpha;
    std::optional<double> s;
    std::optional<double> g;
    std::optional<double> l;
    std::size_t trials = 64;
    std::optional<std::size_t> budget;
    std::optional<std::size_t> pack;
    std::size_t jobs = 0;

    [[nodiscard]] json to_json() const;
};

json to_json(const ExpansionReport &r);
json to_json(const DiameterCheck &d);
json to_json(const CoverLosses &l, const CoverStats &st);
json to_json(const ExperimentReport &r);

/// {n, m, delta_max, h, cover_size, ratio, losses, phase_timings_ms, valid} plus failure details.
json cover_report(const CoverOutcome &outcome, const RunConfig &config);

std::string csv_header();
std::string csv_row(const ExperimentReport &r);

/// One cycle per line, vertices separated by spaces; blank lines and '#' comments are skipped.
std::vector<HamiltonCycle> read_cycles(std::istream &in);
void write_cycles(std::ostream &out, const std::vector<HamiltonCycle> &cycles);

}  // namespace hamcover::cli
