#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sscm/csv.hpp"
#include "sscm/mathutil.hpp"

namespace {

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("csv roundtrip preserves values exactly", "[csv]") {
  Eigen::MatrixXd m(3, 2);
  m << 1.5, -2.25, 3.141592653589793, 0.1, -1e-17, 7;
  auto path = temp_file("sscm_csv_rt.csv");
  sscm::write_matrix_csv(path, m);
  Eigen::MatrixXd back = sscm::read_matrix_csv(path);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 2);
  REQUIRE((back - m).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("csv header row is skipped", "[csv]") {
  auto path = temp_file("sscm_csv_header.csv");
  {
    std::ofstream out(path);
    out << "x1,x2,x3\n1,2,3\n4,5,6\n";
  }
  Eigen::MatrixXd m = sscm::read_matrix_csv(path);
  REQUIRE(m.rows() == 2);
  REQUIRE(m(1, 2) == 6.0);
  std::remove(path.c_str());
}

TEST_CASE("ragged csv is rejected", "[csv]") {
  auto path = temp_file("sscm_csv_ragged.csv");
  {
    std::ofstream out(path);
    out << "1,2,3\n4,5\n";
  }
  REQUIRE_THROWS_AS(sscm::read_matrix_csv(path), sscm::Error);
  std::remove(path.c_str());
}

TEST_CASE("normal quantile inverts the cdf", "[mathutil]") {
  for (double p : {0.001, 0.025, 0.1, 0.5, 0.9, 0.975, 0.999}) {
    double x = sscm::normal_quantile(p);
    REQUIRE(sscm::normal_cdf(x) == Catch::Approx(p).epsilon(1e-12));
  }
  REQUIRE(sscm::normal_quantile(0.975) ==
          Catch::Approx(1.959963984540054).epsilon(1e-12));
  REQUIRE_THROWS_AS(sscm::normal_quantile(0.0), sscm::Error);
}
