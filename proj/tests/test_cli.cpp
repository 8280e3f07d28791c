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
//
// Spawns the CLI (path in SUBTHZ_CLI) and checks the subcommand surface and
// the exit-code contract: 0 ok, 2 usage, 3 data/parse, 4 numerical/model.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace
{

int g_failures = 0;
std::string g_cli;
fs::path g_dir;

int run(const std::string &args)
{
    const std::string command = "\"" + g_cli + "\" " + args + " > " + (g_dir / "stdout.txt").string() +
                                " 2> " + (g_dir / "stderr.txt").string();
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string last_stdout()
{
    std::ifstream in(g_dir / "stdout.txt");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void expect(bool condition, const std::string &what)
{
    if (!condition)
    {
        ++g_failures;
        std::fprintf(stderr, "FAILED: %s\n", what.c_str());
    }
}

void expect_exit(const std::string &args, int expected)
{
    const int rc = run(args);
    expect(rc == expected, "`" + args + "` exited " + std::to_string(rc) + ", expected " +
                               std::to_string(expected));
}

} // namespace

int main()
{
    const char *cli = std::getenv("SUBTHZ_CLI");
    if (cli == nullptr || std::string(cli).empty())
    {
        std::fprintf(stderr, "SUBTHZ_CLI is not set (run through ctest)\n");
        return 1;
    }
    g_cli = cli;
    g_dir = fs::temp_directory_path() / "subthz-cli-test";
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    // two offsets keep the pipeline runs quick; the full grid keeps the
    // alias-free range ahead of the room's bounce paths
    const std::string session = (g_dir / "session.cfg").string();
    std::ofstream(session) << "subthz-session v1\noffsets_cm 0 12\nband G 170e9 260e9 1001\n";

    // ---- usage errors exit 2 -------------------------------------------
    expect_exit("", 2);
    expect_exit("frobnicate", 2);
    expect_exit("simulate", 2);           // missing required --out
    expect_exit("pdp --sweep x", 2);      // missing required --out
    expect_exit("pdp --sweep x --out y --window boxcar", 2);

    // ---- the pipeline: simulate, attenuate, stats, pdp, features ---------
    const std::string out = (g_dir / "sim").string();
    expect_exit("simulate --session " + session + " --out " + out + " --seed 5", 0);
    const std::string baseline = out + "/G/baseline.sweep";
    const std::string measured0 = out + "/G/y_0cm/measured.sweep";
    const std::string measured12 = out + "/G/y_12cm/measured.sweep";
    expect(fs::exists(baseline), "simulate wrote the baseline sweep");
    expect(fs::exists(measured12), "simulate wrote the 12 cm sweep");

    const std::string atten0 = (g_dir / "a0.csv").string();
    const std::string atten12 = (g_dir / "a12.csv").string();
    expect_exit("attenuate --sweep " + measured0 + " --baseline " + baseline + " --out " + atten0, 0);
    expect_exit("attenuate --sweep " + measured12 + " --baseline " + baseline + " --out " + atten12, 0);

    expect_exit("stats --atten " + atten0, 0);
    expect(last_stdout().find("mean_db") != std::string::npos, "stats prints mean_db");

    const std::string models = (g_dir / "models.txt").string();
    expect_exit("fit --atten " + atten0 + " --atten " + atten12 + " --out " + models, 0);
    expect_exit("classify --models " + models + " --atten " + atten0, 0);
    expect(last_stdout().find("winner_index 0") != std::string::npos, "classify picks the 0 cm model");
    expect_exit("classify --models " + models + " --sweep " + measured0 + " --baseline " + baseline, 0);
    expect(last_stdout().find("winner_index 0") != std::string::npos, "classify from sweep+baseline");
    expect_exit("classify --models " + models + " --sweep " + measured0, 2); // baseline missing

    const std::string base_pdp = (g_dir / "baseline_pdp.csv").string();
    expect_exit("pdp --sweep " + baseline + " --out " + base_pdp + " --window kaiser --beta 6 --pad 8", 0);
    expect(fs::exists(base_pdp), "pdp wrote the CSV");
    {
        std::ifstream in(base_pdp);
        std::string header;
        std::getline(in, header);
        expect(header == "path_length_m,power_db", "pdp CSV header in meters");
    }

    const std::string base_features = (g_dir / "baseline.features").string();
    const std::string obs_features = (g_dir / "observed.features").string();
    expect_exit("features --sweep " + baseline + " --out " + base_features, 0);
    expect_exit("features --sweep " + measured12 + " --out " + obs_features, 0);

    const std::string scene = (g_dir / "scene.cfg").string();
    std::ofstream(scene) << "subthz-scene v1\n";
    expect_exit("localize --baseline " + base_features + " --observed " + obs_features + " --scene " +
                    scene,
                0);
    const std::string localize_out = last_stdout();
    expect(localize_out.find("regime scatter_path") != std::string::npos, "12 cm offset localizes via scatter");
    expect(localize_out.find("y_m 0.1") != std::string::npos, "estimate lands near 12 cm");

    // ---- run end to end ---------------------------------------------------
    const std::string run_out = (g_dir / "run").string();
    expect_exit("run --session " + session + " --out " + run_out + " --seed 5", 0);
    expect(fs::exists(run_out + "/G/summary.csv"), "run wrote the summary table");
    expect(fs::exists(run_out + "/G/classification.txt"), "run wrote the classification report");
    expect(fs::exists(run_out + "/G/y_12cm/estimate.txt"), "run wrote the estimate record");

    // ---- data errors exit 3 --------------------------------------------------
    expect_exit("stats --atten " + (g_dir / "missing.csv").string(), 3);
    expect_exit("pdp --sweep " + (g_dir / "missing.sweep").string() + " --out " + base_pdp, 3);
    {
        const std::string broken = (g_dir / "broken.sweep").string();
        std::ofstream(broken) << "subthz-sweep v1\nband_id G\n";
        expect_exit("pdp --sweep " + broken + " --out " + base_pdp, 3);
    }
    {
        // band mismatch between the sweeps
        const std::string w_out = (g_dir / "w").string();
        const std::string w_session = (g_dir / "w_session.cfg").string();
        std::ofstream(w_session) << "subthz-session v1\noffsets_cm 0\nband W 75e9 110e9 201\n";
        expect_exit("simulate --session " + w_session + " --out " + w_out, 0);
        expect_exit("attenuate --sweep " + w_out + "/W/y_0cm/measured.sweep --baseline " + baseline +
                        " --out " + (g_dir / "mismatch.csv").string(),
                    3);
    }

    // ---- model errors exit 4 ----------------------------------------------------
    expect_exit("features --sweep " + baseline + " --out " + base_features +
                    " --min-prominence-db 500",
                4);

    fs::remove_all(g_dir);
    if (g_failures == 0)
    {
        std::printf("cli: all checks passed\n");
        return 0;
    }
    std::printf("cli: %d failures\n", g_failures);
    return 1;
}
