#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "conestream/barcode.hpp"
#include "conestream/coning.hpp"
#include "conestream/errors.hpp"
#include "conestream/streaming_reduction.hpp"
#include "conestream/tower_stream.hpp"
#include "support.hpp"

using namespace conestream;

TEST(TowerFormat, ParsesInclusionsAndContractions) {
  const auto ops = parse_tower("i 0\ni 1\nc 0 1\n");
  const std::vector<TowerOp> want{TowerOp::inclusion(Simplex{0}), TowerOp::inclusion(Simplex{1}),
                                  TowerOp::contraction(0, 1)};
  EXPECT_EQ(ops, want);
}

TEST(TowerFormat, SortsVerticesAndSkipsComments) {
  const auto ops = parse_tower("# header\n\ni 2 0 1   # triangle\n");
  ASSERT_EQ(ops.size(), 1u);
  EXPECT_EQ(ops[0].simplex, (Simplex{0, 1, 2}));
}

TEST(TowerFormat, EmptyInput) { EXPECT_TRUE(parse_tower("").empty()); }

TEST(TowerFormat, SyntaxErrorsCarryLineNumbers) {
  try {
    parse_tower("i 0\nx 1\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_tower("c 1 1\n"), FormatError);
  EXPECT_THROW(parse_tower("i 1 1\n"), FormatError);
  EXPECT_THROW(parse_tower("i\n"), FormatError);
  EXPECT_THROW(parse_tower("c 1\n"), FormatError);
  EXPECT_THROW(parse_tower("i -1\n"), FormatError);
}

TEST(TowerFormat, MissingFacetsDetectedDownstream) {
  const auto ops = parse_tower("i 0 1\n");
  EXPECT_THROW(convert(ops, [](const FiltrationEvent&, std::uint64_t) {}), InputError);
}

TEST(TowerFormat, ContractionOfUnseenVertexRejected) {
  const auto ops = parse_tower("i 0\nc 0 5\n");
  EXPECT_THROW(convert(ops, [](const FiltrationEvent&, std::uint64_t) {}), InputError);
}

TEST(TowerFormat, WriteReadRoundTrip) {
  const auto ops = parse_tower("i 0\ni 1\ni 0 1\nc 1 0\n");
  std::ostringstream os;
  write_tower(os, ops);
  EXPECT_EQ(os.str(), "i 0\ni 1\ni 0 1\nc 1 0\n");
  EXPECT_EQ(parse_tower(os.str()), ops);
}

TEST(FiltrationFormat, RoundTrip) {
  const std::vector<FiltrationEvent> ev{FiltrationEvent::addition(0, 0, {}), FiltrationEvent::addition(1, 0, {}),
                                        FiltrationEvent::addition(2, 1, {0, 1}), FiltrationEvent::inactive(0)};
  std::ostringstream os;
  write_filtration(os, ev);
  EXPECT_EQ(os.str(), "a 0 0\na 1 0\na 2 1 0 1\nd 0\n");
  EXPECT_EQ(parse_filtration(os.str()), ev);
}

TEST(FiltrationFormat, RejectsInvalidStreams) {
  EXPECT_THROW(parse_filtration("a 0 0\na 1 1 0 7\n"), FormatError);  // dangling facet
  EXPECT_THROW(parse_filtration("a 0 0\nd 3\n"), FormatError);        // never added
  EXPECT_THROW(parse_filtration("a 0 0\nd 0\nd 0\n"), FormatError);   // twice
  EXPECT_THROW(parse_filtration("a 1 0\n"), FormatError);             // id gap
  EXPECT_THROW(parse_filtration("a 0 0\na 1 0\nd 0\na 2 1 0 1\n"), FormatError);  // inactive facet
  EXPECT_THROW(parse_filtration("a 0 0\na 1 1 0\n"), FormatError);    // too few facets
  EXPECT_THROW(parse_filtration("q 0\n"), FormatError);
}

TEST(FiltrationFormat, RandomRoundTrips) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ev = testsupport::with_random_deactivations(rng, testsupport::random_filtration(rng, 8, 3, 6), 0.3);
    std::ostringstream a, b;
    write_filtration(a, ev);
    const auto back = parse_filtration(a.str());
    EXPECT_EQ(back, ev);
    write_filtration(b, back);
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST(BarcodeFormat, EmptyAndSorted) {
  std::ostringstream empty;
  write_barcode(empty, Barcode{});
  EXPECT_EQ(empty.str(), "");

  Barcode b;
  b.add(1, 5, 6);
  b.add(0, 1, 3);
  b.add(0, 0, kInfinity);
  b.add(0, 2, 4);
  std::ostringstream os;
  write_barcode(os, b);
  EXPECT_EQ(os.str(), "0 0 inf\n0 1 3\n0 2 4\n1 5 6\n");
  std::istringstream is(os.str());
  EXPECT_EQ(read_barcode(is), b);
}

TEST(BarcodeFormat, SingleVertexTower) {
  const auto f = convert_to_vector(parse_tower("i 0\n"));
  std::ostringstream os;
  write_barcode(os, stream_barcode(f.events));
  EXPECT_EQ(os.str(), "0 0 inf\n");
}
