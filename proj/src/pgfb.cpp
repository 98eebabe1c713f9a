#include "ptor/pgfb.hpp"

#include <cstring>
#include <fstream>

#include "ptor/errors.hpp"

namespace ptor {
namespace {

void put_u32(std::ostream& os, std::uint32_t x) {
  unsigned char b[4] = {static_cast<unsigned char>(x & 0xff),
                        static_cast<unsigned char>((x >> 8) & 0xff),
                        static_cast<unsigned char>((x >> 16) & 0xff),
                        static_cast<unsigned char>((x >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

int pgfb_components(FieldKind kind) {
  switch (kind) {
    case FieldKind::scalar_real:
      return 1;
    case FieldKind::scalar_complex:
      return 2;
    case FieldKind::metric:
      return 3;
    case FieldKind::connection:
      return 6;
    case FieldKind::endo_one_form:
      return 6;
    case FieldKind::one_form:
      return 2;
    case FieldKind::vector:
      return 2;
  }
  throw invalid_field_error("pgfb_components: unknown kind");
}

void write_pgfb(const std::string& path, FieldKind kind, int n, int ncomp,
                const double* data) {
  const std::size_t count = static_cast<std::size_t>(n) * n * ncomp;
  require_finite(data, count, "write_pgfb");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw error("write_pgfb: cannot open " + path);
  os.write("PGFB", 4);
  put_u32(os, 1);
  put_u32(os, static_cast<std::uint32_t>(n));
  put_u32(os, static_cast<std::uint32_t>(ncomp));
  const unsigned char tag = static_cast<unsigned char>(kind);
  os.write(reinterpret_cast<const char*>(&tag), 1);
  const char pad[7] = {};
  os.write(pad, 7);
  // f64 little-endian; this build targets little-endian hosts.
  os.write(reinterpret_cast<const char*>(data),
           static_cast<std::streamsize>(count * sizeof(double)));
  if (!os) throw error("write_pgfb: write failed for " + path);
}

RawField read_pgfb(const std::string& path, std::complex<double> tau) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw error("read_pgfb: cannot open " + path);
  unsigned char header[24];
  is.read(reinterpret_cast<char*>(header), 24);
  if (is.gcount() < 24) throw parse_error("truncated header", is.gcount());
  if (std::memcmp(header, "PGFB", 4) != 0) throw parse_error("bad magic", 0);
  if (get_u32(header + 4) != 1) throw parse_error("unsupported version", 4);
  const std::uint32_t n = get_u32(header + 8);
  if (n < 8 || n % 2 != 0 || n > 1u << 14) throw parse_error("bad grid size", 8);
  const std::uint32_t ncomp = get_u32(header + 12);
  const unsigned char tag = header[16];
  if (tag > 6) throw parse_error("bad kind tag", 16);
  const FieldKind kind = static_cast<FieldKind>(tag);
  if (ncomp != static_cast<std::uint32_t>(pgfb_components(kind)))
    throw parse_error("component count does not match kind", 12);
  RawField out{TorusGrid(static_cast<int>(n), tau), kind,
               static_cast<int>(ncomp), {}};
  const std::size_t count = static_cast<std::size_t>(n) * n * ncomp;
  out.v.resize(count);
  is.read(reinterpret_cast<char*>(out.v.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::size_t>(is.gcount()) != count * sizeof(double))
    throw parse_error("truncated payload", 24 + is.gcount());
  is.peek();
  if (!is.eof()) throw parse_error("trailing bytes", 24 + static_cast<long>(count * sizeof(double)));
  require_finite(out.v.data(), count, "read_pgfb");
  return out;
}

}  // namespace ptor
