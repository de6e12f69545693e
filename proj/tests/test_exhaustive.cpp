#include "support.hpp"

#include "wpb/exhaustive.hpp"

using namespace wpb;

namespace {

SweepReport sweep(std::string id, std::size_t nx, std::size_t ny, unsigned jobs = 1) {
  TheoremInstance in;
  in.id = std::move(id);
  in.nx = nx;
  in.ny = ny;
  in.jobs = jobs;
  return enum_verify(in);
}

}  // namespace

TEST_CASE("may at (2,2): 16 of 256 transformers, set equality") {
  const SweepReport r = sweep("may", 2, 2);
  CHECK(r.holds);
  CHECK(r.exhaustive);
  CHECK(r.materialized);
  CHECK(r.transformers == 256);
  CHECK(r.healthy == 16);
  CHECK(r.realizable == 16);
  CHECK_FALSE(r.discrepancy);
  CHECK(r.text().find("256 transformers, equality holds") != std::string::npos);
  CHECK(r.text().find("result: PASS") != std::string::npos);
}

TEST_CASE("the other Boolean instances at (2,2)") {
  const SweepReport must = sweep("must", 2, 2);
  CHECK(must.holds);
  CHECK(must.healthy == 16);
  const SweepReport game = sweep("game", 2, 2);
  CHECK(game.holds);
  CHECK(game.healthy == 36);  // monotone maps 2^2 -> 2, squared
  CHECK(game.realizable == 36);
  const SweepReport dijkstra = sweep("dijkstra", 2, 2);
  CHECK(dijkstra.holds);
  CHECK(dijkstra.healthy == 16);
  CHECK(dijkstra.computations == 49);
}

TEST_CASE("small and degenerate sizes") {
  for (std::string_view id : {"may", "must", "game", "dijkstra"}) {
    CAPTURE(id);
    const SweepReport r = sweep(std::string(id), 1, 1);
    CHECK(r.holds);
    CHECK(r.transformers == 4);
    CHECK(sweep(std::string(id), 2, 1).holds);
    CHECK(sweep(std::string(id), 1, 2).holds);
  }
  for (std::string_view id : {"may", "must", "game", "dijkstra"}) {
    CAPTURE(id);
    CHECK(sweep(std::string(id), 0, 2).holds);
    CHECK(sweep(std::string(id), 2, 0).holds);
  }
}

TEST_CASE("reports are deterministic and independent of the worker count") {
  const std::string one = sweep("game", 2, 2, 1).text();
  CHECK(sweep("game", 2, 2, 1).text() == one);
  CHECK(sweep("game", 2, 2, 4).text() == one);
  CHECK(sweep("may", 3, 2, 1).text() == sweep("may", 3, 2, 3).text());
}

TEST_CASE("streaming double inclusion at (3,2)") {
  const SweepReport r = sweep("may", 3, 2);
  CHECK(r.holds);
  CHECK(r.healthy == 64);
}

TEST_CASE("sampled rational instances") {
  for (std::string_view id : {"subdist_total", "subdist_partial", "dist_convex", "cv_sublinear"}) {
    CAPTURE(id);
    TheoremInstance in;
    in.id = std::string(id);
    in.samples = 10;
    in.seed = 3;
    const SweepReport r = enum_verify(in);
    CHECK(r.holds);
    CHECK(r.computations == 10);
    CHECK(r.realizable == 10);
    CHECK_FALSE(r.exhaustive);
    CHECK(enum_verify(in).text() == r.text());
  }
}

TEST_CASE("guards and errors") {
  TheoremInstance in;
  in.id = "may";
  in.nx = in.ny = 3;
  in.bound = 1000;
  CHECK_THROWS_AS(enum_verify(in), SizeGuardError);
  in.id = "lemma";
  CHECK_THROWS_AS(enum_verify(in), InputError);
}
