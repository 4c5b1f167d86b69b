#include "solitonlab/field_grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "solitonlab/errors.hpp"

namespace solitonlab {

namespace {

constexpr const char* kAxisNames = "txyz";
constexpr std::size_t kHeaderBytes = 64;

void put_le(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw IoError("grid binary: truncated data");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

}  // namespace

void SliceSpec::validate() const {
  if (axis1 < 0 || axis1 > 3 || axis2 < 0 || axis2 > 3 || axis1 == axis2)
    throw DomainError("slice: axes must be two distinct coordinates");
  if (n1 < 1 || n2 < 1) throw DomainError("slice: resolution must be at least 1x1");
  if (!(max1 >= min1) || !(max2 >= min2) || !std::isfinite(min1 + max1 + min2 + max2))
    throw DomainError("slice: invalid extents");
}

double SliceSpec::coord1(std::size_t i) const {
  return n1 == 1 ? min1 : min1 + (max1 - min1) * static_cast<double>(i) / static_cast<double>(n1 - 1);
}

double SliceSpec::coord2(std::size_t j) const {
  return n2 == 1 ? min2 : min2 + (max2 - min2) * static_cast<double>(j) / static_cast<double>(n2 - 1);
}

FourVector SliceSpec::point(std::size_t i, std::size_t j) const {
  FourVector p = base;
  p[axis1] = coord1(i);
  p[axis2] = coord2(j);
  return p;
}

std::string SliceSpec::plane_name() const {
  return std::string(1, kAxisNames[axis1]) + "-" + kAxisNames[axis2];
}

std::array<int, 2> parse_plane(const std::string& plane) {
  auto axis = [&](char c) {
    const char* p = std::strchr(kAxisNames, c);
    if (!p || c == '\0') throw ConfigError("unknown axis '" + std::string(1, c) + "' in plane '" + plane + "'");
    return static_cast<int>(p - kAxisNames);
  };
  if (plane.size() != 3 || plane[1] != '-') throw ConfigError("plane must look like 'x-y', got '" + plane + "'");
  const std::array<int, 2> a{axis(plane[0]), axis(plane[2])};
  if (a[0] == a[1]) throw ConfigError("plane '" + plane + "' repeats an axis");
  return a;
}

const FieldGrid& GridSet::get(FieldKind k) const {
  switch (k) {
    case FieldKind::ret: return ret;
    case FieldKind::adv: return adv;
    case FieldKind::sym: return sym;
  }
  return sym;
}

GridSet fill_grids(const SliceSpec& slice, const PairEvaluator& eval, unsigned threads) {
  slice.validate();
  const std::size_t n = slice.n1 * slice.n2;
  GridSet g;
  for (auto [grid, kind] : {std::pair{&g.ret, FieldKind::ret}, {&g.adv, FieldKind::adv}, {&g.sym, FieldKind::sym}}) {
    grid->slice = slice;
    grid->kind = kind;
    grid->values.assign(n, Complex());
  }
  std::vector<unsigned char> failed(n, 0);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const FourVector x = slice.point(k % slice.n1, k / slice.n1);
      std::array<Complex, 2> v;
      try {
        v = eval(x);
      } catch (const Error&) {
        v = {Complex(nan, nan), Complex(nan, nan)};
        failed[k] = 1;
      }
      g.ret.values[k] = v[0];
      g.adv.values[k] = v[1];
      g.sym.values[k] = 0.5 * (v[0] + v[1]);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = n * t / threads, e = n * (t + 1) / threads;
      pool.emplace_back([&, t, b, e] {
        try {
          work(b, e);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::size_t bad = 0;
  for (auto f : failed) bad += f;
  g.ret.failures = g.adv.failures = g.sym.failures = bad;
  return g;
}

void write_grid_csv(const FieldGrid& g, std::ostream& os) {
  os << "coord1,coord2,re_u,im_u\n";
  char buf[128];
  for (std::size_t j = 0; j < g.slice.n2; ++j) {
    for (std::size_t i = 0; i < g.slice.n1; ++i) {
      const Complex u = g.at(i, j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", g.slice.coord1(i), g.slice.coord2(j), u.real(),
                    u.imag());
      os << buf;
    }
  }
}

void write_grid_csv(const FieldGrid& g, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  write_grid_csv(g, f);
  if (!f) throw IoError("write failed: " + path.string());
}

void write_grid_binary(const FieldGrid& g, std::ostream& os) {
  char header[kHeaderBytes + 1];
  std::memset(header, ' ', kHeaderBytes);
  const auto& s = g.slice;
  const int len = std::snprintf(header, sizeof header, "SLGRID %zu %zu %.6g %.6g %.6g %.6g", s.n1, s.n2, s.min1,
                                s.max1, s.min2, s.max2);
  if (len < 0 || len >= static_cast<int>(kHeaderBytes)) throw IoError("grid binary: header does not fit 64 bytes");
  std::memset(header + len, ' ', kHeaderBytes - len);
  header[kHeaderBytes - 1] = '\n';
  os.write(header, kHeaderBytes);
  for (const Complex& u : g.values) {
    put_le(os, u.real());
    put_le(os, u.imag());
  }
}

void write_grid_binary(const FieldGrid& g, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  write_grid_binary(g, f);
  if (!f) throw IoError("write failed: " + path.string());
}

FieldGrid read_grid_binary(std::istream& is) {
  char header[kHeaderBytes + 1] = {};
  if (!is.read(header, kHeaderBytes)) throw IoError("grid binary: truncated header");
  std::istringstream hs(header);
  std::string magic;
  FieldGrid g;
  auto& s = g.slice;
  if (!(hs >> magic >> s.n1 >> s.n2 >> s.min1 >> s.max1 >> s.min2 >> s.max2) || magic != "SLGRID")
    throw IoError("grid binary: bad header");
  g.values.resize(s.n1 * s.n2);
  for (auto& u : g.values) {
    const double re = get_le(is);
    u = Complex(re, get_le(is));
  }
  return g;
}

FieldGrid read_grid_binary(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  return read_grid_binary(f);
}

}  // namespace solitonlab
