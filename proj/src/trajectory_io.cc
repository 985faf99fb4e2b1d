#include "malpha/trajectory_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "malpha/config.h"

namespace malpha {

namespace {

class Writer {
 public:
  void bytes(const char* data, std::size_t n) { buf_.insert(buf_.end(), data, data + n); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!out) throw IoError("failed writing " + path);
  }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  explicit Reader(const std::string& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    buf_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  void need(std::size_t n) const {
    if (buf_.size() - pos_ < n) {
      throw TruncatedFile(path_ + ": truncated at byte " + std::to_string(pos_));
    }
  }
  void need_items(std::uint64_t count, std::size_t size) const {
    if (size > 0 && count > (buf_.size() - pos_) / size) {
      throw TruncatedFile(path_ + ": truncated at byte " + std::to_string(pos_));
    }
  }
  std::string bytes(std::size_t n) {
    need(n);
    std::string s(buf_.data() + pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  bool at_end() const { return pos_ == buf_.size(); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::vector<char> buf_;
  std::size_t pos_ = 0;
};

void expect_magic(Reader& r, const char* magic) {
  if (r.bytes(4) != std::string(magic, 4)) {
    throw FormatError(r.path() + ": bad magic, expected \"" + std::string(magic, 4) + "\"");
  }
}

void expect_version(Reader& r, std::uint32_t version) {
  const std::uint32_t v = r.u32();
  if (v != version) {
    throw VersionMismatch(r.path() + ": format version " + std::to_string(v) +
                          ", this build reads " + std::to_string(version));
  }
}

Grid read_grid(Reader& r) {
  const std::uint32_t dim = r.u32();
  const std::uint32_t n = r.u32();
  try {
    return Grid(static_cast<int>(dim), static_cast<int>(n));
  } catch (const ConfigError& e) {
    throw FormatError(r.path() + ": invalid grid header: " + e.what());
  }
}

void write_spectral(Writer& w, const SpectralField& f) {
  for (const Complex& c : f.coeffs()) {
    w.f64(c.real());
    w.f64(c.imag());
  }
}

SpectralField read_spectral(Reader& r, const Grid& grid) {
  r.need(grid.spectral_size() * 16);
  SpectralField f(grid);
  for (Complex& c : f.coeffs()) {
    const double re = r.f64();
    const double im = r.f64();
    c = Complex(re, im);
  }
  return f;
}

}  // namespace

void write_checkpoint(const std::string& path, const SolverState& state,
                      const SimConfig& config) {
  const Grid& grid = state.u.grid();
  Writer w;
  w.bytes("AFLW", 4);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(grid.dim()));
  w.u32(static_cast<std::uint32_t>(grid.n()));
  for (double v : {state.t, config.alpha, config.eta, config.lambda, config.epsilon,
                   config.delta}) {
    w.f64(v);
  }
  for (const auto& c : state.u.physical()) {
    for (double v : c.values()) w.f64(v);
  }
  for (const auto& e : state.sigma.upper()) {
    const ScalarField f = to_physical(e);
    for (double v : f.values()) w.f64(v);
  }
  w.save(path);
}

Checkpoint read_checkpoint(const std::string& path) {
  Reader r(path);
  expect_magic(r, "AFLW");
  expect_version(r, kCheckpointVersion);
  const Grid grid = read_grid(r);
  double h[6];
  for (double& v : h) v = r.f64();
  const int d = grid.dim();
  const std::size_t count = static_cast<std::size_t>(d + StressField::entry_count(d));
  r.need(count * grid.real_size() * 8);
  std::vector<ScalarField> u(d, ScalarField(grid));
  for (auto& c : u) {
    for (double& v : c.values()) v = r.f64();
  }
  std::vector<ScalarField> s(StressField::entry_count(d), ScalarField(grid));
  for (auto& e : s) {
    for (double& v : e.values()) v = r.f64();
  }
  if (!r.at_end()) throw FormatError(path + ": trailing bytes after checkpoint payload");
  // Real-space samples pass through a transform; re-project the roundoff.
  return Checkpoint{h[0], h[1], h[2], h[3], h[4], h[5],
                    VelocityField::project(to_spectral(u)),
                    StressField::from_physical(grid, s)};
}

void write_trajectory(const Trajectory& trajectory, const std::string& path) {
  Writer w;
  w.bytes("AFLT", 4);
  w.u32(kTrajectoryVersion);
  const std::string cfg = config_to_json(trajectory.config);
  w.u64(cfg.size());
  w.bytes(cfg.data(), cfg.size());
  w.u64(trajectory.snapshots.size());
  for (const auto& s : trajectory.snapshots) {
    w.f64(s.t);
    w.f64(s.energy);
    for (const auto& c : s.u.spectral()) write_spectral(w, c);
    for (const auto& e : s.sigma.upper()) write_spectral(w, e);
  }
  w.u64(trajectory.energy.size());
  for (const auto& rec : trajectory.energy) {
    w.f64(rec.t);
    w.f64(rec.energy);
    w.f64(rec.dissipation);
  }
  w.f64(trajectory.max_divergence_drift);
  w.save(path);
}

Trajectory read_trajectory(const std::string& path) {
  Reader r(path);
  expect_magic(r, "AFLT");
  expect_version(r, kTrajectoryVersion);
  const std::uint64_t len = r.u64();
  const std::string cfg = r.bytes(len);
  Trajectory traj;
  try {
    traj.config = parse_config_text(cfg);
  } catch (const ConfigError& e) {
    throw FormatError(path + ": embedded config is invalid: " + e.what());
  }
  const Grid grid = traj.config.grid();
  const int d = grid.dim();
  const std::uint64_t snaps = r.u64();
  const std::size_t per_snapshot =
      16 + 16 * grid.spectral_size() * static_cast<std::size_t>(d + StressField::entry_count(d));
  r.need_items(snaps, per_snapshot);
  for (std::uint64_t k = 0; k < snaps; ++k) {
    const double t = r.f64();
    const double energy = r.f64();
    SpectralVector u;
    for (int c = 0; c < d; ++c) u.push_back(read_spectral(r, grid));
    std::vector<SpectralField> s;
    for (int e = 0; e < StressField::entry_count(d); ++e) s.push_back(read_spectral(r, grid));
    try {
      traj.snapshots.push_back(
          Snapshot{t, VelocityField(std::move(u)), StressField(grid, std::move(s)), energy});
    } catch (const ContractViolation& e) {
      throw FormatError(path + ": snapshot " + std::to_string(k) + ": " + e.what());
    }
  }
  const std::uint64_t records = r.u64();
  r.need_items(records, 24);
  for (std::uint64_t k = 0; k < records; ++k) {
    const double t = r.f64();
    const double e = r.f64();
    const double diss = r.f64();
    traj.energy.push_back({t, e, diss});
  }
  traj.max_divergence_drift = r.f64();
  if (!r.at_end()) throw FormatError(path + ": trailing bytes after trajectory payload");
  return traj;
}

}  // namespace malpha
