#include "sftdim/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace sftdim;
using namespace sftdim::io;

namespace {

template <class F>
Error catch_error(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error thrown";
  return Error(ErrorCode::parse, "none");
}

}  // namespace

TEST(ParseMatrix, JsonAndText) {
  const IntMatrix golden{{1, 1}, {1, 0}};
  EXPECT_EQ(parse_matrix("[[1,1],[1,0]]").matrix, golden);
  EXPECT_EQ(parse_matrix("  \n[[1, 1],\n [1, 0]]\n").matrix, golden);
  EXPECT_EQ(parse_matrix("1 1\n1 0\n").matrix, golden);
  EXPECT_EQ(parse_matrix("# golden mean\n\n1 1   # first row\n1 0").matrix, golden);

  const auto in = parse_matrix(R"({"matrix": [[2]], "label": "full 2-shift"})");
  EXPECT_EQ(in.matrix, IntMatrix{{2}});
  EXPECT_EQ(in.label, "full 2-shift");
}

TEST(ParseMatrix, BigEntries) {
  const auto m = parse_matrix(R"([["123456789012345678901234567890", 1]])").matrix;
  EXPECT_EQ(m(0, 0), Integer("123456789012345678901234567890"));
  EXPECT_EQ(parse_matrix("123456789012345678901234567890 -1").matrix(0, 1), Integer(-1));
  // Round trip: values beyond int64 are written as strings.
  const Json j = to_json(m);
  EXPECT_TRUE(j[0][0].is_string());
  EXPECT_TRUE(j[0][1].is_number_integer());
  EXPECT_EQ(matrix_from_json(j), m);
}

TEST(ParseMatrix, ErrorsCarryCoordinates) {
  auto e = catch_error([] { parse_matrix("1 1\n1 x\n"); });
  EXPECT_EQ(e.code(), ErrorCode::parse);
  EXPECT_EQ(e.row(), 2u);
  EXPECT_EQ(e.col(), 2u);

  e = catch_error([] { parse_matrix("1 1\n\n1 0 3\n"); });
  EXPECT_EQ(e.row(), 3u);

  e = catch_error([] { parse_matrix("[[1,1],\n [1,0]"); });
  EXPECT_EQ(e.code(), ErrorCode::parse);
  EXPECT_EQ(e.row(), 2u);

  e = catch_error([] { parse_matrix("[[1,1],[1,\"a\"]]"); });
  EXPECT_EQ(e.row(), 1u);
  EXPECT_EQ(e.col(), 1u);

  e = catch_error([] { parse_matrix("[[1,1],[1]]"); });
  EXPECT_EQ(e.row(), 1u);

  EXPECT_EQ(catch_error([] { parse_matrix(" \n "); }).code(), ErrorCode::parse);
  EXPECT_EQ(catch_error([] { parse_matrix(R"({"rows": [[1]]})"); }).code(), ErrorCode::parse);
  EXPECT_EQ(catch_error([] { parse_matrix("1.5 2"); }).code(), ErrorCode::parse);
}

TEST(ParseMatrix, AdjacencyValidation) {
  EXPECT_EQ(catch_error([] { parse_adjacency("[[1,2,3]]"); }).code(), ErrorCode::non_square);
  const auto neg = catch_error([] { parse_adjacency("1 1\n-1 0"); });
  EXPECT_EQ(neg.code(), ErrorCode::negative_entry);
  EXPECT_EQ(neg.row(), 1u);
  EXPECT_EQ(neg.col(), 0u);
  EXPECT_EQ(catch_error([] { parse_adjacency("1 1\n0 0"); }).code(),
            ErrorCode::zero_row_or_column);
  EXPECT_EQ(catch_error([] { Ambient::make(parse_matrix("1 1\n0 1").matrix); }).code(),
            ErrorCode::reducible);
  EXPECT_NO_THROW(parse_adjacency("0 1\n1 0"));
}

TEST(ParseMatrix, ReadsFilesThroughAt) {
  const std::string path = testing::TempDir() + "sftdim_io_matrix.txt";
  {
    std::ofstream out(path);
    out << "2 1\n1 1\n";
  }
  EXPECT_EQ(parse_matrix(resolve_argument("@" + path)).matrix, (IntMatrix{{2, 1}, {1, 1}}));
  EXPECT_EQ(resolve_argument("[[1]]"), "[[1]]");
  EXPECT_EQ(catch_error([] { read_file("/nonexistent/sftdim"); }).code(), ErrorCode::parse);
  std::remove(path.c_str());
}

TEST(Hash, DeterministicAndShapeSensitive) {
  const IntMatrix a{{1, 1}, {1, 0}};
  EXPECT_EQ(matrix_hash(a), matrix_hash(parse_matrix("1 1\n1 0").matrix));
  EXPECT_EQ(matrix_hash(a).size(), 16u);
  EXPECT_NE(matrix_hash(a), matrix_hash(IntMatrix{{1, 1}, {0, 1}}));
  EXPECT_NE(matrix_hash(IntMatrix{{1, 1, 1, 0}}), matrix_hash(a));
  EXPECT_NE(matrix_hash(IntMatrix{{11}}), matrix_hash(IntMatrix{{1, 1}}));
}

TEST(Literals, Forms) {
  auto amb = Ambient::make(IntMatrix{{1, 1}, {1, 0}});
  const auto s = parse_element<Flavor::stable>("[[1,2],3]", amb);
  EXPECT_EQ(s.payload(), (IntMatrix{{1, 2}}));
  EXPECT_EQ(s.level(), 3u);

  // A flat two-entry list is a payload at level 0, not a pair.
  const auto bare = parse_element<Flavor::stable>("[1,2]", amb);
  EXPECT_EQ(bare.payload(), (IntMatrix{{1, 2}}));
  EXPECT_EQ(bare.level(), 0u);

  const auto obj = parse_element<Flavor::unstable>(R"({"payload": [4, 5], "level": 2})", amb);
  EXPECT_EQ(obj.payload(), (IntMatrix{{4}, {5}}));
  EXPECT_EQ(obj.level(), 2u);

  const auto x = parse_element<Flavor::cylinder>(R"(["A^3", 1])", amb);
  EXPECT_EQ(x.payload(), amb->power(3));
  EXPECT_EQ(parse_element<Flavor::cylinder>("I", amb).payload(), IntMatrix::identity(2));
  EXPECT_EQ(parse_element<Flavor::homoclinic>("A**2", amb).payload(), amb->power(2));
  EXPECT_EQ(parse_element<Flavor::homoclinic>("A", amb).payload(), amb->matrix());
  EXPECT_TRUE(parse_element<Flavor::stable>("0", amb).payload().is_zero());

  const auto h = parse_hom(R"({"z": [1, 0], "level": 1})", amb);
  EXPECT_EQ(h.z(), (IntMatrix{{1}, {0}}));
  EXPECT_EQ(h.level(), 1u);

  const auto k = parse_k1_element("[[[1,0],[0,0]], 2]", amb);
  EXPECT_EQ(k.level(), 2u);
}

TEST(Literals, Errors) {
  auto amb = Ambient::make(IntMatrix{{1, 1}, {1, 0}});
  EXPECT_EQ(catch_error([&] { parse_element<Flavor::stable>("I", amb); }).code(), ErrorCode::parse);
  EXPECT_EQ(catch_error([&] { parse_element<Flavor::cylinder>("B", amb); }).code(),
            ErrorCode::parse);
  EXPECT_EQ(catch_error([&] { parse_element<Flavor::stable>("[[1,2],-1]", amb); }).code(),
            ErrorCode::parse);
  EXPECT_EQ(catch_error([&] { parse_element<Flavor::stable>(R"({"level": 1})", amb); }).code(),
            ErrorCode::parse);
  EXPECT_EQ(catch_error([&] { parse_element<Flavor::stable>("[1,2,3]", amb); }).code(),
            ErrorCode::dimension_mismatch);
}

TEST(Literals, SerializationRoundTrips) {
  auto amb = Ambient::make(IntMatrix{{2, 1}, {1, 1}});
  const StableElement s(amb, IntMatrix{{3, -4}}, 5);
  const Json js = to_json(s);
  EXPECT_EQ(js["flavor"], "s");
  EXPECT_EQ(js["level"], 5);
  const auto back = element_from_json<Flavor::stable>(js, amb);
  EXPECT_EQ(back.payload(), s.payload());
  EXPECT_EQ(back.level(), s.level());

  const CylinderK0Element x(amb, IntMatrix{{3, 1}, {1, 2}}, 1);
  const auto xb = element_from_json<Flavor::cylinder>(to_json(x), amb);
  EXPECT_EQ(xb.payload(), x.payload());
  EXPECT_EQ(xb.level(), 1u);

  const StableHom h(amb, IntMatrix{{1}, {-1}}, 2);
  const auto hb = parse_hom(to_json(h).dump(), amb);
  EXPECT_EQ(hb.z(), h.z());
  EXPECT_EQ(hb.level(), h.level());
}

TEST(Witness, JsonRoundTrip) {
  const ShiftEquivalenceWitness w{IntMatrix{{1, 1, 0}, {0, 0, 1}}, IntMatrix{{1, 0}, {0, 1}, {1, 0}}, 1};
  const Json j = to_json(w);
  const auto back = parse_witness(j.dump());
  EXPECT_EQ(back.R, w.R);
  EXPECT_EQ(back.S, w.S);
  EXPECT_EQ(back.k, w.k);
  EXPECT_EQ(catch_error([] { parse_witness(R"({"R": [[1]], "S": [[1]]})"); }).code(),
            ErrorCode::parse);
  EXPECT_EQ(catch_error([] { parse_witness(R"({"R": [[1]], "S": [[1]], "k": -1})"); }).code(),
            ErrorCode::parse);

  const Json report = to_json(verify(IntMatrix{{1, 1}, {1, 0}}, IntMatrix{{1, 1, 0}, {0, 0, 1}, {1, 1, 0}}, w));
  EXPECT_TRUE(report["valid"].get<bool>());
  ASSERT_EQ(report["equations"].size(), 4u);
  EXPECT_EQ(report["equations"][0]["equation"], "RS = A^k");
}

TEST(Polynomials, FromJson) {
  EXPECT_EQ(polynomial_from_json(Json::parse("[1, 0, 2]")), (Polynomial{1, 0, 2}));
  EXPECT_EQ(polynomial_from_json(Json::parse(R"(["-3"])")), (Polynomial{-3}));
  EXPECT_EQ(catch_error([] { polynomial_from_json(Json::parse("3")); }).code(), ErrorCode::parse);
}
