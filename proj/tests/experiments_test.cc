// Copyright 2026 The Platreg Authors
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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "platreg/experiments.h"
#include "platreg/graph.h"

namespace platreg {
namespace {

std::string Csv(const HeatmapGrid& grid) {
  std::ostringstream out;
  WriteSweepCsv(grid, out);
  return out.str();
}

SweepSpec SmallLine() {
  SweepSpec spec;
  spec.recipe.kind = RecipeKind::kLinear;
  spec.recipe.n = 5;
  spec.p = {0.5, 0.9, 2};
  spec.b_A = {0.0, 0.2, 2};
  return spec;
}

SweepSpec SmallSbm() {
  SweepSpec spec;
  spec.recipe.kind = RecipeKind::kSbm;
  spec.recipe.sbm = CommunityChainSbm({10, 10, 10}, {0.75, 0.75, 0.75});
  spec.p = {0.5, 0.9, 3};
  spec.b_A = {0.0, 0.02, 4};
  spec.samples = 4;
  spec.base_seed = 12;
  return spec;
}

TEST_CASE("irregular choices") {
  const Network one = Network::Create(30, {}, {0}, std::vector<UserProfile>(30));
  Assignment a = Assignment::AllOn(30, Platform::kA, Platform::kB);
  CHECK(IrregularChoices(one, a) == 0);
  for (int i = 0; i < 10; ++i) a.platforms[i] = Platform::kB;
  CHECK(IrregularChoices(one, a) == 10);

  std::vector<UserProfile> profiles(90);
  for (int i = 0; i < 90; ++i) profiles[i].community = i / 30;
  const Network three = Network::Create(90, {}, {0}, profiles, {30, 30, 30});
  Assignment b = Assignment::AllOn(90, Platform::kA, Platform::kB);
  for (int i = 30; i < 45; ++i) b.platforms[i] = Platform::kB;
  for (int i = 60; i < 90; ++i) b.platforms[i] = Platform::kB;
  CHECK(IrregularChoices(three, b) == 15);
}

TEST_CASE("ranges") {
  const Range r{0.0, 0.2, 3};
  CHECK(r.at(0) == 0.0);
  CHECK(r.at(1) == doctest::Approx(0.1));
  CHECK(r.at(2) == 0.2);
  CHECK_THROWS_AS((Range{0.3, 0.1, 3}).Validate("x"), InvalidParamsError);
}

TEST_CASE("empty grid writes only the header") {
  CHECK(Csv(HeatmapGrid{}) == std::string(kSweepCsvHeader) + "\n");
  std::istringstream in(Csv(HeatmapGrid{}));
  CHECK(ReadSweepCsv(in).empty());
}

TEST_CASE("two by two sweep is reproducible") {
  const HeatmapGrid a = Sweep(SmallLine(), {1, {}});
  const HeatmapGrid b = Sweep(SmallLine(), {1, {}});
  REQUIRE(a.cells.size() == 4);
  CHECK(Csv(a) == Csv(b));
  CHECK(a.at(0, 0).p == 0.5);
  CHECK(a.at(0, 1).b_A == 0.2);
  CHECK(a.at(1, 0).p == 0.9);
  int lines = 0;
  for (char c : Csv(a)) lines += c == '\n';
  CHECK(lines == 5);
}

TEST_CASE("thread count and task order do not change the output") {
  const HeatmapGrid serial = Sweep(SmallSbm(), {1, {}});
  const HeatmapGrid threaded = Sweep(SmallSbm(), {3, {}});
  const HeatmapGrid shuffled = Sweep(SmallSbm(), {4, 99});
  CHECK(serial.cells == threaded.cells);
  CHECK(serial.cells == shuffled.cells);
  CHECK(Csv(serial) == Csv(shuffled));
}

TEST_CASE("csv round trip") {
  const HeatmapGrid grid = Sweep(SmallSbm(), {2, {}});
  std::istringstream in(Csv(grid));
  const std::vector<HeatmapCell> back = ReadSweepCsv(in);
  REQUIRE(back.size() == grid.cells.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const HeatmapCell& g = grid.cells[i];
    CHECK(back[i].p == g.p);
    CHECK(back[i].b_A == g.b_A);
    CHECK(back[i].samples == g.samples);
    CHECK(back[i].n_no_effective == g.n_no_effective);
    CHECK(back[i].n_any == g.n_any);
    CHECK(back[i].n_moderate == g.n_moderate);
    CHECK(back[i].mean_rho_se == g.mean_rho_se);
    CHECK(back[i].seed_base == g.seed_base);
  }
}

TEST_CASE("property: columns get stricter as b_A grows") {
  SweepSpec spec;
  spec.recipe.kind = RecipeKind::kLinear;
  spec.recipe.n = 20;
  spec.p = {0.2, 0.9, 5};
  spec.b_A = {0.0, 0.2, 21};
  const HeatmapGrid grid = Sweep(spec, {2, {}});
  for (int ip = 0; ip < grid.p_steps; ++ip) {
    double prev = 1e9;
    for (int ib = 0; ib < grid.b_A_steps; ++ib) {
      const HeatmapCell& c = grid.at(ip, ib);
      CHECK(c.error.empty());
      const double rho = c.n_any ? 0.0 : c.n_no_effective ? 2.0 : *c.mean_rho_se;
      CHECK(rho <= prev + 1e-9);
      prev = rho;
    }
  }
  const auto boundary = AnyBoundary(grid, grid.p_steps - 1);
  REQUIRE(boundary);
  CHECK(*boundary <= 0.2);
}

TEST_CASE("pgm output") {
  const HeatmapGrid grid = Sweep(SmallLine(), {1, {}});
  std::ostringstream out;
  WritePgm(grid, out);
  std::istringstream in(out.str());
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  CHECK(magic == "P2");
  CHECK(w == 2);
  CHECK(h == 2);
  CHECK(maxval == 255);
  std::vector<int> px;
  for (int v; in >> v;) px.push_back(v);
  REQUIRE(px.size() == 4);
  // Top row is the largest b_A.
  CHECK(px[0] == static_cast<int>(std::lround(grid.at(0, 1).mean_gray)));
  CHECK(px[2] == static_cast<int>(std::lround(grid.at(0, 0).mean_gray)));
  for (int v : px) CHECK((v >= 0 && v <= 255));
}

TEST_CASE("gray levels") {
  RegulationResult r;
  r.kind = RegulationKind::kNoEffective;
  CHECK(GrayLevel(r) == 0);
  r.kind = RegulationKind::kAny;
  r.rho_se = 0.0;
  CHECK(GrayLevel(r) == 255);
  r.kind = RegulationKind::kModerate;
  r.rho_se = 0.25;
  r.beta_free = 0.5;
  CHECK(GrayLevel(r) == 128);
}

TEST_CASE("assumption check on complete communities") {
  A1Spec spec;
  spec.theta_values = {1.0};
  spec.sizes = {10, 10, 10};
  spec.samples = 5;
  for (const A1Row& row : ValidateAssumption1(spec, 2)) {
    if (row.irregular) CHECK(*row.irregular == 0);
  }
}

TEST_CASE("presets") {
  for (const std::string& name : PresetNames()) {
    CAPTURE(name);
    CHECK_NOTHROW(PresetSweep(name, true).Validate());
  }
  CHECK(PresetSweep("chain-base", true).p.steps == 20);
  CHECK_THROWS_AS(PresetSweep("nope", false), InvalidParamsError);
}

}  // namespace
}  // namespace platreg
