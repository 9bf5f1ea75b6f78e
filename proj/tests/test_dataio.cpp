#include "doctest.h"
#include "mdlclust/dataio.hpp"

#include <filesystem>
#include <fstream>
#include <string>

using namespace mdlclust;

namespace {

std::string write_tmp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path);
  f << text;
  return path.string();
}

}  // namespace

TEST_CASE("load_csv parses features and maps labels in first-appearance order") {
  std::string path = write_tmp("io_basic.csv",
                               "x,y,label\n"
                               "1.0,2.0,red\n"
                               "3.5,-1.0,blue\n"
                               "0.25,4.0,red\n");
  LoadOptions opts;
  opts.label_column = "label";
  Dataset ds = load_csv(path, opts);
  CHECK(ds.features.rows() == 3);
  CHECK(ds.features.cols() == 2);
  CHECK(ds.feature_names == std::vector<std::string>{"x", "y"});
  CHECK(ds.features(1, 0) == doctest::Approx(3.5));
  CHECK(ds.features(2, 1) == doctest::Approx(4.0));
  REQUIRE(ds.has_truth);
  CHECK(ds.truth.k == 2);
  CHECK(ds.truth.assignments[0] == 1);  // red seen first
  CHECK(ds.truth.assignments[1] == 2);
  CHECK(ds.truth.assignments[2] == 1);
  CHECK(ds.class_names == std::vector<std::string>{"red", "blue"});
  CHECK(ds.name == "io_basic");
}

TEST_CASE("load_csv selects the label column by 1-based index") {
  std::string path = write_tmp("io_index.csv",
                               "a,c,b\n"
                               "1,yes,2\n"
                               "3,no,4\n");
  LoadOptions opts;
  opts.label_column = "2";
  Dataset ds = load_csv(path, opts);
  CHECK(ds.features.cols() == 2);
  CHECK(ds.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(ds.features(0, 1) == doctest::Approx(2.0));
  CHECK(ds.truth.k == 2);
}

TEST_CASE("load_csv without header and without labels") {
  std::string path = write_tmp("io_nohdr.csv", "1,2\n3,4\n");
  LoadOptions opts;
  opts.header = false;
  Dataset ds = load_csv(path, opts);
  CHECK(ds.features.rows() == 2);
  CHECK_FALSE(ds.has_truth);
  DatasetSummary s = summarize(ds);
  CHECK(s.n == 2);
  CHECK(s.a == 2);
  CHECK(s.c == 0);
}

TEST_CASE("load_csv rejects bad input with the offending row number") {
  LoadOptions opts;
  SUBCASE("ragged row") {
    std::string path = write_tmp("io_ragged.csv", "a,b\n1,2\n3\n");
    CHECK_THROWS_AS(load_csv(path, opts), DataError);
    CHECK_THROWS_WITH_AS(load_csv(path, opts), doctest::Contains("3"), DataError);
  }
  SUBCASE("missing value") {
    std::string path = write_tmp("io_missing.csv", "a,b\n1,\n");
    CHECK_THROWS_AS(load_csv(path, opts), DataError);
  }
  SUBCASE("non-numeric feature") {
    std::string path = write_tmp("io_text.csv", "a,b\n1,oops\n");
    CHECK_THROWS_AS(load_csv(path, opts), DataError);
  }
  SUBCASE("unreadable file") {
    CHECK_THROWS_AS(load_csv("/nonexistent/nope.csv", opts), DataError);
  }
  SUBCASE("empty file") {
    std::string path = write_tmp("io_empty.csv", "");
    CHECK_THROWS_AS(load_csv(path, opts), DataError);
  }
}

TEST_CASE("load_csv label selector failures are configuration errors") {
  std::string path = write_tmp("io_sel.csv", "a,b\n1,2\n");
  LoadOptions opts;
  SUBCASE("unknown column name") {
    opts.label_column = "missing";
    CHECK_THROWS_AS(load_csv(path, opts), ConfigError);
  }
  SUBCASE("index out of range") {
    opts.label_column = "5";
    CHECK_THROWS_AS(load_csv(path, opts), ConfigError);
  }
  SUBCASE("name needs a header") {
    opts.header = false;
    opts.label_column = "a";
    std::string p2 = write_tmp("io_sel2.csv", "1,2\n3,4\n");
    CHECK_THROWS_AS(load_csv(p2, opts), ConfigError);
  }
}

TEST_CASE("load_csv reads the bundled iris file") {
  LoadOptions opts;
  opts.label_column = "species";
  Dataset ds = load_csv("data/iris.csv", opts);
  CHECK(ds.features.rows() == 150);
  CHECK(ds.features.cols() == 4);
  CHECK(ds.truth.k == 3);
  CHECK(ds.truth.uses_all_ids());
}

TEST_CASE("generate_halfring places noiseless points on the two arcs") {
  Dataset ds = generate_halfring(4, 0.0, 7);
  REQUIRE(ds.features.rows() == 4);
  // first arc endpoints of the upper half-circle
  CHECK(ds.features(0, 0) == doctest::Approx(1.0));
  CHECK(ds.features(0, 1) == doctest::Approx(0.0));
  CHECK(ds.features(1, 0) == doctest::Approx(-1.0));
  CHECK(ds.features(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
  // second arc interleaves below
  CHECK(ds.features(2, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ds.features(2, 1) == doctest::Approx(0.6));
  CHECK(ds.features(3, 0) == doctest::Approx(2.0));
  CHECK(ds.features(3, 1) == doctest::Approx(0.6));
  REQUIRE(ds.has_truth);
  CHECK(ds.truth.assignments[0] == 1);
  CHECK(ds.truth.assignments[1] == 1);
  CHECK(ds.truth.assignments[2] == 2);
  CHECK(ds.truth.assignments[3] == 2);
}

TEST_CASE("generate_halfring is reproducible and validates n") {
  Dataset a = generate_halfring(40, 0.1, 5);
  Dataset b = generate_halfring(40, 0.1, 5);
  CHECK(a.features == b.features);
  Dataset c = generate_halfring(40, 0.1, 6);
  CHECK(a.features != c.features);
  CHECK_THROWS_AS(generate_halfring(5), std::invalid_argument);
  CHECK_THROWS_AS(generate_halfring(2), std::invalid_argument);
}

TEST_CASE("normalize maps columns onto [0,1] and is idempotent") {
  Eigen::MatrixXd x(3, 3);
  x << 0, 10, 7,
       5, 20, 7,
       10, 15, 7;
  Eigen::MatrixXd n = normalize(x);
  CHECK(n(0, 0) == doctest::Approx(0.0));
  CHECK(n(1, 0) == doctest::Approx(0.5));
  CHECK(n(2, 0) == doctest::Approx(1.0));
  CHECK(n(0, 1) == doctest::Approx(0.0));
  CHECK(n(1, 1) == doctest::Approx(1.0));
  CHECK(n(2, 1) == doctest::Approx(0.5));
  // constant column collapses to zero
  CHECK(n.col(2).isZero());
  CHECK(normalize(n) == n);
}

TEST_CASE("attribute_weights scales column dispersion by the maximum") {
  Eigen::MatrixXd x(3, 3);
  x << 0.0, 0.0, 0.5,
       0.5, 0.0, 0.5,
       1.0, 1.0, 0.5;
  Eigen::VectorXd w = attribute_weights(x);
  // sample variances: 0.25, 1/3, 0 -> divide by 1/3
  CHECK(w[0] == doctest::Approx(0.75));
  CHECK(w[1] == doctest::Approx(1.0));
  CHECK(w[2] == doctest::Approx(0.0));
}

TEST_CASE("attribute_weights edge cases") {
  Eigen::MatrixXd all_const(4, 2);
  all_const.setConstant(0.3);
  CHECK(attribute_weights(all_const).isZero());
  Eigen::MatrixXd one_row(1, 2);
  one_row << 1, 2;
  CHECK_THROWS_AS(attribute_weights(one_row), std::invalid_argument);
}
