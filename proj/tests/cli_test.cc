// Copyright 2026 The phasetomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the phasetomo executable and checks exit codes and outputs.

#include <sys/wait.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "gtest/gtest.h"

#include "phasetomo/io.h"
#include "phasetomo/pipeline.h"
#include "test_util.h"

using namespace phasetomo;

namespace {

int run(const std::string &args) {
    std::string cmd = std::string(PHASETOMO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

DensityMatrix example_state() {
    std::vector<double> alpha{0.5, 0.3, 0.2};
    return DensityMatrix::diagonal(alpha);
}

}  // namespace

TEST(cli, validate_exit_codes) {
    ScratchDir dir;
    write_density(dir.file("ok.json"), example_state());
    std::vector<double> bad{0.9, 0.3};
    write_density(dir.file("bad.json"), DensityMatrix::diagonal(bad));
    write_text(dir.file("junk.json"), "not json");
    ASSERT_EQ(run("validate --state " + dir.file("ok.json")), 0);
    ASSERT_EQ(run("validate --state " + dir.file("bad.json")), 2);
    ASSERT_EQ(run("validate --state " + dir.file("junk.json")), 1);
    ASSERT_EQ(run("validate --state " + dir.file("missing.json")), 1);
    ASSERT_EQ(run("validate"), 1);
    ASSERT_EQ(run("frobnicate"), 1);
}

TEST(cli, simulate_reconstruct_single) {
    ScratchDir dir;
    write_density(dir.file("ex.json"), example_state());
    ASSERT_EQ(run("simulate --state " + dir.file("ex.json") + " --s 1 --out " + dir.file("t.json")), 0);
    ASSERT_EQ(run("reconstruct --input " + dir.file("t.json") + " --method single --s 1 --state " +
                  dir.file("ex.json") + " --out " + dir.file("hat.json") + " --report " + dir.file("r.json")),
              0);
    ASSERT_LE(max_abs_difference(read_density(dir.file("hat.json")), example_state()), 1e-12);
    // A tomogram with only s = 1 cannot feed the full-tomogram method.
    ASSERT_EQ(run("reconstruct --input " + dir.file("t.json") + " --out " + dir.file("hat2.json")), 3);
}

TEST(cli, samples_are_byte_identical_per_seed) {
    ScratchDir dir;
    write_density(dir.file("ex.json"), example_state());
    for (const char *prefix : {"a", "b"}) {
        ASSERT_EQ(run("simulate --state " + dir.file("ex.json") + " --mode samples --count 3000 --seed 4 --s 0 1 --out " +
                      dir.file(prefix)),
                  0);
    }
    ASSERT_EQ(read_text(dir.file("a_s0.csv")), read_text(dir.file("b_s0.csv")));
    ASSERT_EQ(read_text(dir.file("a_s1.csv")), read_text(dir.file("b_s1.csv")));
    ASSERT_EQ(read_text(dir.file("a_s1.json")), read_text(dir.file("b_s1.json")));

    // 3000 samples cannot fill 48 bins of 100.
    ASSERT_EQ(run("estimate --samples " + dir.file("a_s0.csv") + " --dim 3 --min-count 100 --out " +
                  dir.file("t.json")),
              4);
    ASSERT_EQ(run("estimate --samples " + dir.file("a_s0.csv") + " " + dir.file("a_s1.csv") +
                  " --dim 2 --bins 12 --min-count 20 --out " + dir.file("t.json")),
              0);
    auto t = read_tomogram(dir.file("t.json"));
    ASSERT_TRUE(t.contains(1, 1));
}

TEST(cli, roundtrip) {
    ScratchDir dir;
    ASSERT_EQ(run("roundtrip --dim 4 --seed 11 --report " + dir.file("r.json")), 0);
    ASSERT_NE(read_text(dir.file("r.json")).find("\"passed\": true"), std::string::npos);
    ASSERT_EQ(run("roundtrip --dim 3 --seed 5 --method single --s 0"), 0);
}
