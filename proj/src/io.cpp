// SPDX-License-Identifier: Apache-2.0
//
// subthz-sense  sub-THz link blockage sensing and passive localization
// Copyright (C) 2026 subthz-sense developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace subthz
{

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace
{

constexpr const char *sweep_magic = "subthz-sweep v1";
constexpr const char *models_magic = "subthz-models v1";
constexpr const char *features_magic = "subthz-features v1";
constexpr const char *perturbation_magic = "subthz-perturbation v1";
constexpr const char *session_magic = "subthz-session v1";
constexpr const char *scene_magic = "subthz-scene v1";

std::ofstream open_out(const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    return out;
}

// line-oriented reader with 1-based line numbers for error reporting
class LineReader
{
  public:
    explicit LineReader(const std::string &path) : path_(path), in_(path)
    {
        if (!in_)
            throw io_error("cannot open '" + path + "' for reading");
    }

    bool next(std::string &line)
    {
        while (std::getline(in_, line))
        {
            ++line_no_;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            return true;
        }
        return false;
    }

    // next non-blank, non-comment line
    bool next_content(std::string &line)
    {
        while (next(line))
        {
            const auto pos = line.find_first_not_of(" \t");
            if (pos == std::string::npos || line[pos] == '#')
                continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string &message) const { throw parse_error(path_, line_no_, message); }
    [[noreturn]] void fail_eof(const std::string &expected) const
    {
        throw parse_error(path_, line_no_, "unexpected end of file, expected " + expected);
    }

    const std::string &path() const { return path_; }
    int line_no() const { return line_no_; }

  private:
    std::string path_;
    std::ifstream in_;
    int line_no_ = 0;
};

std::vector<std::string> split_tokens(const std::string &line)
{
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok)
        tokens.push_back(tok);
    return tokens;
}

double parse_double(const LineReader &reader, const std::string &token)
{
    try
    {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception &)
    {
        throw parse_error(reader.path(), reader.line_no(), "expected a number, got '" + token + "'");
    }
}

long long parse_int(const LineReader &reader, const std::string &token)
{
    try
    {
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception &)
    {
        throw parse_error(reader.path(), reader.line_no(), "expected an integer, got '" + token + "'");
    }
}

// key/value header line "name value...", returns the value tokens
std::vector<std::string> expect_key(LineReader &reader, const std::string &key)
{
    std::string line;
    if (!reader.next_content(line))
        reader.fail_eof("'" + key + "'");
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.front() != key)
        reader.fail("expected '" + key + "', got '" + line + "'");
    tokens.erase(tokens.begin());
    return tokens;
}

void expect_magic(LineReader &reader, const std::string &magic)
{
    std::string line;
    if (!reader.next_content(line))
        reader.fail_eof("'" + magic + "' header");
    if (line != magic)
        reader.fail("not a " + magic + " file (header '" + line + "')");
}

} // namespace

// --- sweep files -------------------------------------------------------------

void write_sweep(const FrequencySweep &sweep, const std::string &path)
{
    sweep.validate();
    std::ofstream out = open_out(path);
    out << sweep_magic << "\n";
    out << "band_id " << sweep.band.band_id << "\n";
    out << "f_start_hz " << format_double(sweep.band.f_start_hz) << "\n";
    out << "f_stop_hz " << format_double(sweep.band.f_stop_hz) << "\n";
    out << "n_points " << sweep.band.n_points << "\n";
    out << "label " << sweep.label << "\n";
    out << "freq_hz re im\n";
    const std::vector<double> grid = frequency_grid(sweep.band);
    for (std::size_t k = 0; k < sweep.values.size(); ++k)
        out << static_cast<long long>(std::llround(grid[k])) << " " << format_double(sweep.values[k].real())
            << " " << format_double(sweep.values[k].imag()) << "\n";
    if (!out)
        throw io_error("write failed for '" + path + "'");
}

FrequencySweep read_sweep(const std::string &path)
{
    LineReader reader(path);
    expect_magic(reader, sweep_magic);

    FrequencySweep sweep;
    {
        auto v = expect_key(reader, "band_id");
        if (v.size() != 1)
            reader.fail("band_id expects one token");
        sweep.band.band_id = v.front();
    }
    {
        auto v = expect_key(reader, "f_start_hz");
        if (v.size() != 1)
            reader.fail("f_start_hz expects one value");
        sweep.band.f_start_hz = parse_double(reader, v.front());
    }
    {
        auto v = expect_key(reader, "f_stop_hz");
        if (v.size() != 1)
            reader.fail("f_stop_hz expects one value");
        sweep.band.f_stop_hz = parse_double(reader, v.front());
    }
    {
        auto v = expect_key(reader, "n_points");
        if (v.size() != 1)
            reader.fail("n_points expects one value");
        sweep.band.n_points = static_cast<int>(parse_int(reader, v.front()));
    }
    {
        std::string line;
        if (!reader.next_content(line))
            reader.fail_eof("'label'");
        if (line.rfind("label", 0) != 0)
            reader.fail("expected 'label', got '" + line + "'");
        sweep.label = line.size() > 6 ? line.substr(6) : "";
    }
    try
    {
        sweep.band.validate();
    }
    catch (const std::invalid_argument &e)
    {
        reader.fail(e.what());
    }
    {
        std::string line;
        if (!reader.next_content(line) || line != "freq_hz re im")
            reader.fail("expected column header 'freq_hz re im'");
    }

    const std::vector<double> grid = frequency_grid(sweep.band);
    sweep.values.reserve(grid.size());
    std::string line;
    while (reader.next_content(line))
    {
        auto tokens = split_tokens(line);
        if (tokens.size() != 3)
            reader.fail("expected 'freq re im' row, got '" + line + "'");
        const long long freq = parse_int(reader, tokens[0]);
        const std::size_t k = sweep.values.size();
        if (k >= grid.size())
            reader.fail("more rows than the declared n_points " + std::to_string(sweep.band.n_points));
        const long long expected = static_cast<long long>(std::llround(grid[k]));
        if (freq != expected)
            reader.fail("frequency " + std::to_string(freq) + " does not match the grid value " +
                        std::to_string(expected) + " at row " + std::to_string(k));
        sweep.values.emplace_back(parse_double(reader, tokens[1]), parse_double(reader, tokens[2]));
    }
    if (static_cast<int>(sweep.values.size()) != sweep.band.n_points)
        throw parse_error(path, reader.line_no(),
                          "row count " + std::to_string(sweep.values.size()) +
                              " does not match the declared n_points " + std::to_string(sweep.band.n_points));
    try
    {
        sweep.validate();
    }
    catch (const std::exception &e)
    {
        throw parse_error(path, 0, e.what());
    }
    return sweep;
}

// --- attenuation series --------------------------------------------------------

void write_attenuation_csv(const AttenuationSeries &series, const std::string &path)
{
    std::ofstream out = open_out(path);
    out << "freq_hz,a_db\n";
    const std::vector<double> grid = frequency_grid(series.band);
    if (grid.size() != series.a_db.size())
        throw std::invalid_argument("attenuation series length does not match its band");
    for (std::size_t k = 0; k < grid.size(); ++k)
        out << format_double(grid[k]) << "," << format_double(series.a_db[k]) << "\n";
    if (!out)
        throw io_error("write failed for '" + path + "'");
}

AttenuationSeries read_attenuation_csv(const std::string &path, const std::string &label)
{
    LineReader reader(path);
    std::string line;
    if (!reader.next_content(line) || line != "freq_hz,a_db")
        throw parse_error(path, reader.line_no(), "expected header 'freq_hz,a_db'");

    std::vector<double> freqs;
    std::vector<double> values;
    while (reader.next_content(line))
    {
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            reader.fail("expected 'freq_hz,a_db' row, got '" + line + "'");
        freqs.push_back(parse_double(reader, line.substr(0, comma)));
        values.push_back(parse_double(reader, line.substr(comma + 1)));
    }
    if (freqs.size() < 2)
        throw parse_error(path, reader.line_no(), "need at least two rows");

    AttenuationSeries series;
    series.band = BandConfig{"custom", freqs.front(), freqs.back(), static_cast<int>(freqs.size())};
    try
    {
        series.band.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw parse_error(path, 0, e.what());
    }
    const std::vector<double> grid = frequency_grid(series.band);
    const double tol = 1e-6 * series.band.spacing_hz();
    for (std::size_t k = 0; k < freqs.size(); ++k)
        if (std::abs(freqs[k] - grid[k]) > tol)
            throw parse_error(path, static_cast<int>(k) + 2, "non-uniform frequency grid at row " + std::to_string(k));
    series.a_db = std::move(values);
    series.hypothesis_label = label.empty() ? std::filesystem::path(path).stem().string() : label;
    return series;
}

// --- classifier model sets -----------------------------------------------------

void write_models(const std::vector<SampleDistribution> &models, const std::string &path)
{
    if (models.empty())
        throw std::invalid_argument("write_models: empty model list");
    for (const SampleDistribution &m : models)
    {
        m.validate();
        if (m.bin_edges != models.front().bin_edges)
            throw mismatch_error("write_models: models use different bin edges");
    }

    std::ofstream out = open_out(path);
    out << models_magic << "\n";
    out << "n_hypotheses " << models.size() << "\n";
    out << "n_bins " << models.front().bin_count() << "\n";
    out << "epsilon " << format_double(models.front().smoothing_epsilon) << "\n";
    out << "bin_edges";
    for (double e : models.front().bin_edges)
        out << " " << format_double(e);
    out << "\n";
    for (std::size_t i = 0; i < models.size(); ++i)
    {
        out << "hypothesis " << i << " " << models[i].hypothesis_label << "\n";
        out << "probabilities";
        for (double p : models[i].probabilities)
            out << " " << format_double(p);
        out << "\n";
    }
    if (!out)
        throw io_error("write failed for '" + path + "'");
}

std::vector<SampleDistribution> read_models(const std::string &path)
{
    LineReader reader(path);
    expect_magic(reader, models_magic);

    const auto n_hyp_tokens = expect_key(reader, "n_hypotheses");
    if (n_hyp_tokens.size() != 1)
        reader.fail("n_hypotheses expects one value");
    const long long n_hyp = parse_int(reader, n_hyp_tokens.front());
    if (n_hyp < 1 || n_hyp > 4096)
        reader.fail("implausible hypothesis count " + std::to_string(n_hyp));

    const auto n_bins_tokens = expect_key(reader, "n_bins");
    if (n_bins_tokens.size() != 1)
        reader.fail("n_bins expects one value");
    const long long n_bins = parse_int(reader, n_bins_tokens.front());
    if (n_bins < 2 || n_bins > 65536)
        reader.fail("implausible bin count " + std::to_string(n_bins));

    const auto eps_tokens = expect_key(reader, "epsilon");
    if (eps_tokens.size() != 1)
        reader.fail("epsilon expects one value");
    const double epsilon = parse_double(reader, eps_tokens.front());

    const auto edge_tokens = expect_key(reader, "bin_edges");
    if (static_cast<long long>(edge_tokens.size()) != n_bins + 1)
        reader.fail("expected " + std::to_string(n_bins + 1) + " bin edges, got " +
                    std::to_string(edge_tokens.size()));
    std::vector<double> edges;
    edges.reserve(edge_tokens.size());
    for (const std::string &t : edge_tokens)
        edges.push_back(parse_double(reader, t));

    std::vector<SampleDistribution> models;
    for (long long i = 0; i < n_hyp; ++i)
    {
        std::string line;
        if (!reader.next_content(line))
            reader.fail_eof("'hypothesis " + std::to_string(i) + "'");
        auto tokens = split_tokens(line);
        if (tokens.size() < 2 || tokens[0] != "hypothesis")
            reader.fail("expected 'hypothesis <index> <label>', got '" + line + "'");
        if (parse_int(reader, tokens[1]) != i)
            reader.fail("hypothesis index " + tokens[1] + " out of order, expected " + std::to_string(i));

        SampleDistribution dist;
        dist.bin_edges = edges;
        dist.smoothing_epsilon = epsilon;
        dist.hypothesis_label = tokens.size() > 2 ? tokens[2] : "";
        for (std::size_t t = 3; t < tokens.size(); ++t)
            dist.hypothesis_label += " " + tokens[t];

        const auto prob_tokens = expect_key(reader, "probabilities");
        if (static_cast<long long>(prob_tokens.size()) != n_bins)
            reader.fail("expected " + std::to_string(n_bins) + " probabilities, got " +
                        std::to_string(prob_tokens.size()));
        for (const std::string &t : prob_tokens)
            dist.probabilities.push_back(parse_double(reader, t));
        try
        {
            dist.validate();
        }
        catch (const std::invalid_argument &e)
        {
            reader.fail(e.what());
        }
        models.push_back(std::move(dist));
    }
    return models;
}

// --- CIR feature sets ------------------------------------------------------------

void write_features(const CirFeatureSet &features, const std::string &path)
{
    features.validate();
    std::ofstream out = open_out(path);
    out << features_magic << "\n";
    out << "n_components " << features.count() << "\n";
    out << "delay_resolution_s " << format_double(features.delay_resolution_s) << "\n";
    out << "index z_m amplitude_db\n";
    for (int k = 0; k < features.count(); ++k)
        out << k << " " << format_double(features.path_length_m[static_cast<std::size_t>(k)]) << " "
            << format_double(20.0 * std::log10(features.amplitude[static_cast<std::size_t>(k)])) << "\n";
    if (!out)
        throw io_error("write failed for '" + path + "'");
}

CirFeatureSet read_features(const std::string &path)
{
    LineReader reader(path);
    expect_magic(reader, features_magic);

    const auto n_tokens = expect_key(reader, "n_components");
    if (n_tokens.size() != 1)
        reader.fail("n_components expects one value");
    const long long n = parse_int(reader, n_tokens.front());
    if (n < 0 || n > 65536)
        reader.fail("implausible component count " + std::to_string(n));

    const auto res_tokens = expect_key(reader, "delay_resolution_s");
    if (res_tokens.size() != 1)
        reader.fail("delay_resolution_s expects one value");

    CirFeatureSet features;
    features.delay_resolution_s = parse_double(reader, res_tokens.front());

    std::string line;
    if (!reader.next_content(line) || line != "index z_m amplitude_db")
        reader.fail("expected column header 'index z_m amplitude_db'");

    for (long long k = 0; k < n; ++k)
    {
        if (!reader.next_content(line))
            reader.fail_eof("component row " + std::to_string(k));
        auto tokens = split_tokens(line);
        if (tokens.size() != 3)
            reader.fail("expected 'index z_m amplitude_db' row, got '" + line + "'");
        if (parse_int(reader, tokens[0]) != k)
            reader.fail("component index " + tokens[0] + " out of order, expected " + std::to_string(k));
        const double z = parse_double(reader, tokens[1]);
        const double amp_db = parse_double(reader, tokens[2]);
        features.path_length_m.push_back(z);
        features.delay_s.push_back(z / speed_of_light_m_s);
        features.amplitude.push_back(std::pow(10.0, amp_db / 20.0));
    }
    if (reader.next_content(line))
        reader.fail("unexpected extra row '" + line + "'");
    try
    {
        features.validate();
    }
    catch (const std::exception &e)
    {
        throw parse_error(path, 0, e.what());
    }
    return features;
}

std::string format_perturbation_report(const PerturbationReport &report)
{
    std::ostringstream out;
    out << perturbation_magic << "\n";
    out << "delta_k " << report.delta_k << "\n";
    double mean_rho = 0.0;
    for (double r : report.rho_db)
        mean_rho += r;
    if (!report.rho_db.empty())
        mean_rho /= static_cast<double>(report.rho_db.size());
    out << "mean_rho_db " << format_double(mean_rho) << "\n";
    out << "index z_m amplitude_db rho_db status\n";

    // matched and lost baseline components, by baseline index
    std::size_t pair_pos = 0;
    std::size_t lost_pos = 0;
    for (int b = 0; b < report.baseline.count(); ++b)
    {
        if (pair_pos < report.matched_pairs.size() && report.matched_pairs[pair_pos].baseline_index == b)
        {
            const MatchedPair &pair = report.matched_pairs[pair_pos];
            const double amp =
                report.baseline.amplitude[static_cast<std::size_t>(b)] * pair.rho_linear; // observed level
            out << b << " " << format_double(report.baseline.path_length_m[static_cast<std::size_t>(b)])
                << " " << format_double(20.0 * std::log10(amp)) << " "
                << format_double(report.rho_db[pair_pos]) << " matched\n";
            ++pair_pos;
        }
        else
        {
            out << b << " " << format_double(report.baseline.path_length_m[static_cast<std::size_t>(b)])
                << " "
                << format_double(20.0 *
                                 std::log10(report.baseline.amplitude[static_cast<std::size_t>(b)]))
                << " - lost\n";
            ++lost_pos;
        }
    }
    for (int k = 0; k < report.new_components.count(); ++k)
        out << report.baseline.count() + k << " "
            << format_double(report.new_components.path_length_m[static_cast<std::size_t>(k)]) << " "
            << format_double(20.0 * std::log10(report.new_components.amplitude[static_cast<std::size_t>(k)]))
            << " - new\n";
    return out.str();
}

void write_perturbation_report(const PerturbationReport &report, const std::string &path)
{
    std::ofstream out = open_out(path);
    out << format_perturbation_report(report);
    if (!out)
        throw io_error("write failed for '" + path + "'");
}

// --- PDP tables --------------------------------------------------------------------

void write_pdp_csv(const PowerDelayProfile &profile, const std::string &path, bool centimeters)
{
    std::ofstream out = open_out(path);
    out << (centimeters ? "path_length_cm,power_db\n" : "path_length_m,power_db\n");
    const double scale = centimeters ? 100.0 : 1.0;
    for (std::size_t i = 0; i < profile.path_length_m.size(); ++i)
        out << format_double(profile.path_length_m[i] * scale) << "," << format_double(profile.power_db[i])
            << "\n";
    if (!out)
        throw io_error("write failed for '" + path + "'");
}

// --- localization records -------------------------------------------------------------

std::string format_offset_estimate(const OffsetEstimate &estimate)
{
    std::ostringstream out;
    out << "regime " << regime_name(estimate.regime) << "\n";
    out << "has_estimate " << (estimate.has_estimate ? 1 : 0) << "\n";
    if (estimate.has_estimate)
    {
        out << "y_m " << format_double(estimate.y_m) << "\n";
        out << "y_sigma_m " << format_double(estimate.y_sigma_m) << "\n";
    }
    out << "no_target " << (estimate.no_target_flag ? 1 : 0) << "\n";
    out << "delta_k " << estimate.delta_k << "\n";
    out << "mean_rho_db " << format_double(estimate.mean_rho_db) << "\n";
    out << "mean_new_path_length_m " << format_double(estimate.mean_new_path_length_m) << "\n";
    return out.str();
}

// --- scene / session configs -------------------------------------------------------------

namespace
{

// shared key-value body for scene and session files
struct ConfigParser
{
    LineReader reader;
    SessionConfig session;
    bool saw_offsets = false;
    bool saw_band = false;
    bool saw_target_x = false;

    explicit ConfigParser(const std::string &path) : reader(path) {}

    double one_double(const std::vector<std::string> &tokens, const std::string &key)
    {
        if (tokens.size() != 2)
            reader.fail(key + " expects one value");
        return parse_double(reader, tokens[1]);
    }

    long long one_int(const std::vector<std::string> &tokens, const std::string &key)
    {
        if (tokens.size() != 2)
            reader.fail(key + " expects one value");
        return parse_int(reader, tokens[1]);
    }

    bool one_bool(const std::vector<std::string> &tokens, const std::string &key)
    {
        const long long v = one_int(tokens, key);
        if (v != 0 && v != 1)
            reader.fail(key + " expects 0 or 1");
        return v == 1;
    }

    // returns false for keys it does not know
    bool apply(const std::vector<std::string> &tokens)
    {
        const std::string &key = tokens.front();
        Scene &scene = session.scene;
        Target &target = session.target_template;

        if (key == "scene.tx_m" || key == "scene.rx_m" || key == "scene.room_origin_m")
        {
            if (tokens.size() != 3)
                reader.fail(key + " expects two values (x y)");
            Point2 p{parse_double(reader, tokens[1]), parse_double(reader, tokens[2])};
            if (key == "scene.tx_m")
                scene.tx = p;
            else if (key == "scene.rx_m")
                scene.rx = p;
            else
                scene.room_origin = p;
            return true;
        }
        if (key == "scene.room_size_m")
        {
            if (tokens.size() != 4)
                reader.fail("scene.room_size_m expects three values (width depth height)");
            scene.room_width_m = parse_double(reader, tokens[1]);
            scene.room_depth_m = parse_double(reader, tokens[2]);
            scene.room_height_m = parse_double(reader, tokens[3]);
            return true;
        }
        if (key == "scene.plane_height_m")
            return scene.plane_height_m = one_double(tokens, key), true;
        if (key == "scene.floor_loss_db")
            return scene.floor_loss_db = one_double(tokens, key), true;
        if (key == "scene.ceiling_loss_db")
            return scene.ceiling_loss_db = one_double(tokens, key), true;
        if (key == "scene.wall_loss_db")
            return scene.wall_loss_db = one_double(tokens, key), true;

        if (key == "target.diameter_m")
            return target.diameter_m = one_double(tokens, key), true;
        if (key == "target.height_m")
            return target.height_m = one_double(tokens, key), true;
        if (key == "target.material")
        {
            if (tokens.size() != 2)
                reader.fail("target.material expects one token");
            if (tokens[1] == "absorbing")
                target.material = TargetMaterial::perfectly_absorbing;
            else if (tokens[1] == "conducting")
                target.material = TargetMaterial::perfectly_conducting;
            else
                reader.fail("target.material must be absorbing|conducting");
            return true;
        }
        if (key == "target.x_m")
        {
            session.target_x_m = one_double(tokens, key);
            saw_target_x = true;
            return true;
        }
        return false;
    }

    bool apply_session(const std::vector<std::string> &tokens)
    {
        const std::string &key = tokens.front();
        SessionConfig &s = session;

        if (key == "offsets_cm")
        {
            if (!saw_offsets)
            {
                s.offsets_cm.clear();
                saw_offsets = true;
            }
            for (std::size_t i = 1; i < tokens.size(); ++i)
                s.offsets_cm.push_back(parse_double(reader, tokens[i]));
            return true;
        }
        if (key == "band")
        {
            if (tokens.size() != 5)
                reader.fail("band expects: band <id> <f_start_hz> <f_stop_hz> <n_points>");
            if (!saw_band)
            {
                s.bands.clear();
                saw_band = true;
            }
            BandConfig band;
            band.band_id = tokens[1];
            band.f_start_hz = parse_double(reader, tokens[2]);
            band.f_stop_hz = parse_double(reader, tokens[3]);
            band.n_points = static_cast<int>(parse_int(reader, tokens[4]));
            try
            {
                band.validate();
            }
            catch (const std::invalid_argument &e)
            {
                reader.fail(e.what());
            }
            for (const BandConfig &existing : s.bands)
                if (existing.band_id == band.band_id)
                    reader.fail("duplicate band id '" + band.band_id + "'");
            s.bands.push_back(band);
            return true;
        }
        if (key == "synth.noise_floor_db")
            return s.synth.noise_floor_db = one_double(tokens, key), true;
        if (key == "synth.noise_enabled")
            return s.synth.noise_enabled = one_bool(tokens, key), true;
        if (key == "synth.seed")
            return s.synth.seed = static_cast<std::uint64_t>(one_int(tokens, key)), true;
        if (key == "synth.blockage_model")
        {
            if (tokens.size() != 2)
                reader.fail("synth.blockage_model expects one token");
            try
            {
                s.synth.blockage_model = blockage_model_from_name(tokens[1]);
            }
            catch (const std::invalid_argument &e)
            {
                reader.fail(e.what());
            }
            return true;
        }
        if (key == "synth.max_bounce_order")
            return s.synth.max_bounce_order = static_cast<int>(one_int(tokens, key)), true;
        if (key == "synth.scatter_enabled")
            return s.synth.scatter_enabled = one_bool(tokens, key), true;
        if (key == "synth.scatter_gain")
            return s.synth.scatter_gain = one_double(tokens, key), true;
        if (key == "synth.clear_zone_factor")
            return s.synth.clear_zone_factor = one_double(tokens, key), true;
        if (key == "atten.convention")
        {
            if (tokens.size() != 2)
                reader.fail("atten.convention expects one token");
            if (tokens[1] == "amplitude_20log")
                s.convention = DbConvention::amplitude_20log;
            else if (tokens[1] == "power_10log")
                s.convention = DbConvention::power_10log;
            else
                reader.fail("atten.convention must be amplitude_20log|power_10log");
            return true;
        }
        if (key == "classifier.bins")
            return s.classifier_bins = static_cast<int>(one_int(tokens, key)), true;
        if (key == "classifier.epsilon")
            return s.classifier_epsilon = one_double(tokens, key), true;
        if (key == "features.window")
        {
            if (tokens.size() != 2)
                reader.fail("features.window expects one token");
            try
            {
                s.window = window_from_name(tokens[1]);
            }
            catch (const std::invalid_argument &e)
            {
                reader.fail(e.what());
            }
            return true;
        }
        if (key == "features.kaiser_beta")
            return s.kaiser_beta = one_double(tokens, key), true;
        if (key == "features.zero_pad_factor")
            return s.zero_pad_factor = static_cast<int>(one_int(tokens, key)), true;
        if (key == "features.max_components")
            return s.max_components = static_cast<int>(one_int(tokens, key)), true;
        if (key == "features.min_prominence_db")
            return s.min_prominence_db = one_double(tokens, key), true;
        if (key == "features.min_separation_bins")
            return s.min_separation_bins = static_cast<int>(one_int(tokens, key)), true;
        if (key == "features.delay_tolerance_bins")
            return s.delay_tolerance_bins = one_double(tokens, key), true;
        if (key == "localize.rho_threshold_db")
            return s.localize.rho_threshold_db = one_double(tokens, key), true;
        if (key == "localize.los_block_threshold_db")
            return s.localize.los_block_threshold_db = one_double(tokens, key), true;
        if (key == "localize.assumed_x_m")
            return s.localize.assumed_x_m = one_double(tokens, key), true;
        return false;
    }
};

} // namespace

SceneFile read_scene(const std::string &path)
{
    ConfigParser parser(path);
    std::string line;
    if (!parser.reader.next_content(line))
        parser.reader.fail_eof("header");
    if (line != scene_magic && line != session_magic)
        parser.reader.fail("not a " + std::string(scene_magic) + " or " + session_magic + " file");

    const bool full_session = line == session_magic;
    while (parser.reader.next_content(line))
    {
        auto tokens = split_tokens(line);
        if (parser.apply(tokens))
            continue;
        if (full_session && parser.apply_session(tokens))
            continue;
        parser.reader.fail("unknown key '" + tokens.front() + "'");
    }

    SceneFile out;
    out.scene = parser.session.scene;
    out.target = parser.session.target_template;
    out.has_target = true;
    const double d = los_path_length(out.scene);
    out.target.center.x_m = parser.session.target_x_m.value_or(d / 2.0);
    try
    {
        out.scene.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw parse_error(path, 0, e.what());
    }
    return out;
}

SessionConfig read_session(const std::string &path)
{
    ConfigParser parser(path);
    std::string line;
    if (!parser.reader.next_content(line))
        parser.reader.fail_eof("header");
    if (line != session_magic)
        parser.reader.fail("not a " + std::string(session_magic) + " file");

    while (parser.reader.next_content(line))
    {
        auto tokens = split_tokens(line);
        if (parser.apply(tokens))
            continue;
        if (parser.apply_session(tokens))
            continue;
        parser.reader.fail("unknown key '" + tokens.front() + "'");
    }

    try
    {
        parser.session.validate();
    }
    catch (const std::exception &e)
    {
        throw parse_error(path, 0, e.what());
    }
    return parser.session;
}

} // namespace subthz
