#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "freefit/spectrum_io.hpp"

using namespace freefit;
using Catch::Approx;

TEST_CASE("parse a commented spectrum file") {
  std::istringstream in(
      "# interacting dimer, site-1 cut\n"
      "0.5\n"
      "\n"
      "0.3\n"
      "  0.15\n"
      "0.05\n");
  const auto s = parse_spectrum(in);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == Approx(0.5));
  CHECK(s[3] == Approx(0.05));
}

TEST_CASE("parser sorts unsorted input descending") {
  std::istringstream in("0.1\n0.6\n0.3\n");
  const auto s = parse_spectrum(in);
  CHECK(s[0] == Approx(0.6));
  CHECK(s[1] == Approx(0.3));
  CHECK(s[2] == Approx(0.1));
}

TEST_CASE("parser renormalizes within tolerance and rejects beyond it") {
  std::istringstream ok("0.5000004\n0.4999999\n");
  const auto s = parse_spectrum(ok);
  CHECK(s[0] + s[1] == Approx(1.0).margin(1e-15));

  std::istringstream off("0.6\n0.5\n");
  CHECK_THROWS_AS(parse_spectrum(off), parse_error);
}

TEST_CASE("parser rejects malformed content") {
  std::istringstream garbage("0.5 extra\n0.5\n");
  CHECK_THROWS_AS(parse_spectrum(garbage), parse_error);
  std::istringstream word("abc\n");
  CHECK_THROWS_AS(parse_spectrum(word), parse_error);
  std::istringstream negative("-0.1\n1.1\n");
  CHECK_THROWS_AS(parse_spectrum(negative), parse_error);
  std::istringstream empty("# nothing here\n");
  CHECK_THROWS_AS(parse_spectrum(empty), parse_error);
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "freefit_spectrum_test.txt";
  const auto s = spectrum_from_probabilities({0.4, 0.3, 0.2, 0.1});
  write_spectrum_file(path.string(), s, "round trip");
  const auto back = read_spectrum_file(path.string());
  REQUIRE(back.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(back[k] == Approx(s[k]).margin(1e-15));
  std::filesystem::remove(path);

  CHECK_THROWS_AS(read_spectrum_file("/nonexistent/dir/spectrum.txt"), io_error);
}
