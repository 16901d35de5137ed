#include "revlat/state_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "revlat/errors.hpp"

namespace revlat {
namespace {

constexpr std::array<char, 8> kMagic{'R', 'V', 'L', 'F', 'X', 'S', 'T', '\0'};

template <typename U>
void put(std::ostream& out, U value) {
  static_assert(std::is_unsigned_v<U>);
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename U>
U get(std::istream& in) {
  static_assert(std::is_unsigned_v<U>);
  std::array<unsigned char, sizeof(U)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw StateError("state file is truncated");
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

void put_ints(std::ostream& out, const FixedPointField& f) {
  for (auto v : f.ints) put(out, static_cast<std::uint64_t>(v));
}

FixedPointField get_ints(std::istream& in, std::size_t n, int scale_exp) {
  FixedPointField f{std::vector<std::int64_t>(n), scale_exp};
  for (auto& v : f.ints) v = static_cast<std::int64_t>(get<std::uint64_t>(in));
  return f;
}

}  // namespace

void write_state(std::ostream& out, const StoredState& stored) {
  const auto& s = stored.state;
  const std::size_t M = stored.config.sites();
  require_sites(s.r_even.size(), stored.config, "stored R");
  require_sites(s.i_odd.size(), stored.config, "stored I");
  require_sites(s.i_prev.size(), stored.config, "stored I_prev");
  require_sites(stored.potential.size(), stored.config, "stored potential");

  out.write(kMagic.data(), kMagic.size());
  put(out, kStateFormatVersion);
  put(out, static_cast<std::uint32_t>(M));
  put(out, static_cast<std::uint32_t>(s.r_even.scale_exp));
  put(out, static_cast<std::uint32_t>(stored.coef_exp));
  put(out, static_cast<std::uint64_t>(s.l));
  put(out, std::bit_cast<std::uint64_t>(stored.config.spacing()));
  put(out, std::bit_cast<std::uint64_t>(stored.config.time_step()));
  for (double v : stored.potential.values) put(out, std::bit_cast<std::uint64_t>(v));
  put_ints(out, s.r_even);
  put_ints(out, s.i_odd);
  put_ints(out, s.i_prev);
  if (!out) throw StateError("failed to write state");
}

StoredState read_state(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw StateError("not a fixed-point state file");
  const auto version = get<std::uint32_t>(in);
  if (version != kStateFormatVersion) throw StateError("unsupported state format version " + std::to_string(version));

  const auto M = get<std::uint32_t>(in);
  const auto scale_exp = static_cast<std::int32_t>(get<std::uint32_t>(in));
  const auto coef_exp = static_cast<std::int32_t>(get<std::uint32_t>(in));
  const auto l = static_cast<std::int64_t>(get<std::uint64_t>(in));
  const double spacing = std::bit_cast<double>(get<std::uint64_t>(in));
  const double time_step = std::bit_cast<double>(get<std::uint64_t>(in));
  if (scale_exp < 0 || M > (1u << 28)) throw StateError("corrupt state header");

  LatticeConfig config(M, spacing, time_step);
  PotentialProfile potential{std::vector<double>(M)};
  for (auto& v : potential.values) v = std::bit_cast<double>(get<std::uint64_t>(in));

  FixedState state;
  state.r_even = get_ints(in, M, scale_exp);
  state.i_odd = get_ints(in, M, scale_exp);
  state.i_prev = get_ints(in, M, scale_exp);
  state.l = l;
  return {std::move(state), config, std::move(potential), coef_exp};
}

void save_state(const std::filesystem::path& path, const StoredState& stored) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StateError("cannot open " + path.string() + " for writing");
  write_state(out, stored);
}

StoredState load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StateError("cannot open " + path.string());
  return read_state(in);
}

}  // namespace revlat
