#include "springsim/trajectory.hpp"

#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "springsim/io_util.hpp"
#include "test_util.hpp"

namespace springsim {
namespace {

using testing::scratch_dir;
using Kind = TrajectoryError::Kind;

std::filesystem::path write(const std::filesystem::path& dir, const std::string& name,
                            const std::string& body) {
  const auto p = dir / name;
  std::ofstream(p) << body;
  return p;
}

template <typename F>
TrajectoryError capture(F&& f) {
  try {
    f();
  } catch (const TrajectoryError& e) {
    return e;
  }
  ADD_FAILURE() << "expected TrajectoryError";
  return TrajectoryError(Kind::kInvalid, "none");
}

TEST(TrajectoryLoad, TwoRowsInferDt) {
  const auto dir = scratch_dir("traj_two");
  const auto p = write(dir, "a.csv", "t,alpha_rad,tau_Nm\n0.00,0.1,1.0\n0.01,0.2,1.1\n");
  const auto t = load_trajectory(p);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_DOUBLE_EQ(t.dt(), 0.01);
  EXPECT_EQ(t[0].alpha, 0.1);
  EXPECT_EQ(t[1].tau, 1.1);
}

TEST(TrajectoryLoad, GapIsNonUniformAtIndexTwo) {
  const auto dir = scratch_dir("traj_gap");
  const auto p = write(dir, "a.csv", "t,alpha_rad,tau_Nm\n0.00,0,0\n0.01,0,0\n0.03,0,0\n");
  const auto e = capture([&] { load_trajectory(p); });
  EXPECT_EQ(e.kind(), Kind::kNonUniformTimestep);
  EXPECT_EQ(e.where(), 2u);
}

TEST(TrajectoryLoad, ErrorPaths) {
  const auto dir = scratch_dir("traj_err");
  EXPECT_EQ(capture([&] { load_trajectory(dir / "nope.csv"); }).kind(), Kind::kMissingFile);
  EXPECT_EQ(capture([&] { load_trajectory(write(dir, "e.csv", "")); }).kind(), Kind::kEmptyFile);
  EXPECT_EQ(capture([&] { load_trajectory(write(dir, "h.csv", "t,alpha_rad,tau_Nm\n")); }).kind(),
            Kind::kEmptyFile);
  EXPECT_EQ(
      capture([&] { load_trajectory(write(dir, "one.csv", "t,alpha_rad,tau_Nm\n0,1,2\n")); })
          .kind(),
      Kind::kEmptyFile);

  const auto bad = capture([&] {
    load_trajectory(write(dir, "m.csv", "t,alpha_rad,tau_Nm\n0,1,2\n0.01,abc,2\n"));
  });
  EXPECT_EQ(bad.kind(), Kind::kMalformedRow);
  EXPECT_EQ(bad.where(), 3u);
  EXPECT_NE(std::string(bad.what()).find("m.csv:3"), std::string::npos);

  EXPECT_EQ(capture([&] {
              load_trajectory(write(dir, "c.csv", "t,alpha_rad,tau_Nm\n0,1,2,3\n0.01,1,2\n"));
            }).kind(),
            Kind::kMalformedRow);
  EXPECT_EQ(capture([&] { load_trajectory(write(dir, "hd.csv", "time,a,b\n0,1,2\n")); }).kind(),
            Kind::kMalformedRow);
  EXPECT_EQ(capture([&] {
              load_trajectory(write(dir, "n.csv", "t,alpha_rad,tau_Nm\n0,nan,2\n0.01,1,2\n"));
            }).kind(),
            Kind::kInvalid);
}

TEST(TrajectoryConstruct, RejectsEmptyAndBadDt) {
  EXPECT_THROW(Trajectory({}, 0.01), TrajectoryError);
  EXPECT_THROW(Trajectory({{0, 0, 0}}, 0.0), TrajectoryError);
  EXPECT_THROW(Trajectory({{0, 0, 0}, {0.02, 0, 0}}, 0.01), TrajectoryError);
  EXPECT_NO_THROW(Trajectory({{0, 0, 0}}, 0.01));
}

TEST(TrajectorySave, OneSampleIsOneDataRow) {
  const auto dir = scratch_dir("traj_one");
  save_trajectory(Trajectory({{0.0, 0.5, -1.25}}, 0.01), dir / "one.csv");
  EXPECT_EQ(read_file(dir / "one.csv"), "t,alpha_rad,tau_Nm\n0,0.5,-1.25\n");
}

TEST(TrajectorySave, SineRoundTripAndLineCount) {
  const auto dir = scratch_dir("traj_sine");
  std::vector<Sample> s(1000);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = static_cast<double>(i) / 100.0;
    s[i] = {t, 0.7 + 0.2 * std::sin(2 * M_PI * t / 1.88), 10.0 * std::cos(3.1 * t) - 4.0};
  }
  const Trajectory orig(s, 0.01);
  const auto path = dir / "sine.csv";
  save_trajectory(orig, path);

  const auto text = read_file(path);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1001);

  const auto back = load_trajectory(path);
  ASSERT_EQ(back.size(), orig.size());
  EXPECT_NEAR(back.dt(), orig.dt(), 1e-12);
  for (std::size_t i = 0; i < orig.size(); ++i) {
    EXPECT_NEAR(back[i].t, orig[i].t, 1e-12);
    EXPECT_NEAR(back[i].alpha, orig[i].alpha, 1e-12);
    EXPECT_NEAR(back[i].tau, orig[i].tau, 1e-12);
  }
}

// load . save is the identity on arbitrary valid data, to the last bit.
TEST(TrajectorySave, RoundTripPropertyRandom) {
  const auto dir = scratch_dir("traj_prop");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> len(2, 500);
  std::uniform_real_distribution<double> dt(1e-4, 0.5);
  for (int trial = 0; trial < 25; ++trial) {
    const auto orig = testing::random_trajectory(rng, len(rng), dt(rng), -1e3, 1e3, 1e6);
    const auto path = dir / ("r" + std::to_string(trial) + ".csv");
    save_trajectory(orig, path);
    const auto back = load_trajectory(path);
    ASSERT_EQ(back.size(), orig.size());
    for (std::size_t i = 0; i < orig.size(); ++i) {
      ASSERT_EQ(back[i].t, orig[i].t);
      ASSERT_EQ(back[i].alpha, orig[i].alpha);
      ASSERT_EQ(back[i].tau, orig[i].tau);
    }
  }
}

TEST(TrajectorySlice, KeepsDt) {
  const Trajectory t({{0, 1, 1}, {0.1, 2, 2}, {0.2, 3, 3}}, 0.1);
  const auto s = t.slice(1, 2);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].alpha, 2);
  EXPECT_EQ(s.dt(), 0.1);
  EXPECT_THROW(t.slice(2, 2), std::out_of_range);
}

}  // namespace
}  // namespace springsim
