#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "ptor/pgfb.hpp"
#include "ptor/random_fields.hpp"
#include "ptor/tensor.hpp"

using namespace ptor;

namespace {

std::string tmp_path(const char* name) {
  return std::string("/tmp/ptor_pgfb_") + name + ".pgfb";
}

std::vector<char> slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void spew(const std::string& path, const std::vector<char>& bytes) {
  std::ofstream os(path, std::ios::binary);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("round trip is bit-exact for every kind") {
  const TorusGrid grid(16);
  struct Case {
    FieldKind kind;
    int ncomp;
  };
  const Case cases[] = {
      {FieldKind::scalar_real, 1}, {FieldKind::scalar_complex, 2},
      {FieldKind::metric, 3},      {FieldKind::connection, 6},
      {FieldKind::endo_one_form, 6}, {FieldKind::one_form, 2},
      {FieldKind::vector, 2},
  };
  for (const Case& c : cases) {
    std::vector<double> data(grid.nodes() * c.ncomp);
    for (std::size_t i = 0; i < data.size(); ++i)
      data[i] = std::sin(0.37 * static_cast<double>(i)) * 1.0e3 + 1.0 / 3.0;
    const std::string path = tmp_path("roundtrip");
    write_pgfb(path, c.kind, grid.n, c.ncomp, data.data());
    const RawField back = read_pgfb(path);
    CHECK(back.kind == c.kind);
    CHECK(back.ncomp == c.ncomp);
    CHECK(back.grid.n == grid.n);
    REQUIRE(back.v.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) CHECK(back.v[i] == data[i]);
    CHECK(pgfb_components(c.kind) == c.ncomp);
  }
}

TEST_CASE("header layout is fixed at 24 bytes") {
  const TorusGrid grid(8);
  const ScalarField f = random_scalar(grid, 1, 1.0);
  const std::string path = tmp_path("header");
  write_pgfb(path, f, FieldKind::scalar_real);
  const std::vector<char> bytes = slurp(path);
  REQUIRE(bytes.size() == 24 + grid.nodes() * sizeof(double));
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "PGFB");
  CHECK(static_cast<unsigned char>(bytes[4]) == 1);   // version, LE
  CHECK(static_cast<unsigned char>(bytes[8]) == 8);   // n
  CHECK(static_cast<unsigned char>(bytes[12]) == 1);  // ncomp
  CHECK(static_cast<unsigned char>(bytes[16]) == 0);  // kind tag
  for (int i = 17; i < 24; ++i) CHECK(bytes[i] == 0);
}

TEST_CASE("malformed files report the offending byte offset") {
  const TorusGrid grid(8);
  const ScalarField f = random_scalar(grid, 2, 1.0);
  const std::string good = tmp_path("good");
  write_pgfb(good, f, FieldKind::scalar_real);
  const std::vector<char> base = slurp(good);
  const std::string bad = tmp_path("bad");

  auto expect_offset = [&](const std::vector<char>& bytes, long offset) {
    spew(bad, bytes);
    try {
      read_pgfb(bad);
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.offset == offset);
    }
  };

  std::vector<char> b = base;
  b[0] = 'X';
  expect_offset(b, 0);

  b = base;
  b[4] = 2;
  expect_offset(b, 4);

  b = base;
  b[8] = 7;  // odd grid size
  expect_offset(b, 8);

  b = base;
  b[12] = 3;  // ncomp inconsistent with scalar kind
  expect_offset(b, 12);

  b = base;
  b[16] = 9;  // unknown kind tag
  expect_offset(b, 16);

  b = base;
  b.resize(base.size() - 8);  // drop the last value
  expect_offset(b, static_cast<long>(b.size()));

  b = base;
  b.push_back(0);
  expect_offset(b, static_cast<long>(base.size()));

  b = base;
  b.resize(10);  // header cut short
  spew(bad, b);
  CHECK_THROWS_AS(read_pgfb(bad), parse_error);
}

TEST_CASE("non-finite payloads are rejected on both ends") {
  const TorusGrid grid(8);
  ScalarField f(grid);
  f.at(1, 1) = std::nan("");
  const std::string path = tmp_path("nonfinite");
  CHECK_THROWS_AS(write_pgfb(path, f, FieldKind::scalar_real), invalid_field_error);

  ScalarField ok(grid);
  write_pgfb(path, ok, FieldKind::scalar_real);
  std::vector<char> bytes = slurp(path);
  const double inf = std::numeric_limits<double>::infinity();
  std::memcpy(bytes.data() + 24, &inf, sizeof inf);
  spew(path, bytes);
  CHECK_THROWS_AS(read_pgfb(path), invalid_field_error);
}

TEST_CASE("complex field writer interleaves re and im") {
  const TorusGrid grid(8);
  ComplexField f(grid);
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy)
      f.at(ix, iy) = {1.0 * ix, -1.0 * iy};
  const std::string path = tmp_path("complex");
  write_pgfb(path, f);
  const RawField back = read_pgfb(path);
  REQUIRE(back.kind == FieldKind::scalar_complex);
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy) {
      const std::size_t i = static_cast<std::size_t>(ix) * grid.n + iy;
      CHECK(back.v[2 * i] == 1.0 * ix);
      CHECK(back.v[2 * i + 1] == -1.0 * iy);
    }
}
