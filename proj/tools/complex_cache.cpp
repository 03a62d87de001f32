#include "complex_cache.hpp"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <vector>

namespace cgh::cache {

namespace {

constexpr char magic[8] = {'C', 'G', 'H', 'C', 'B', 'I', 'N', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_u64(std::ostream& os, std::uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_i64(std::ostream& os, std::int64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_string(std::ostream& os, const std::string& s) {
  put_u64(os, s.size());
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

bool get_u32(std::istream& is, std::uint32_t& v) {
  return bool(is.read(reinterpret_cast<char*>(&v), sizeof v));
}
bool get_u64(std::istream& is, std::uint64_t& v) {
  return bool(is.read(reinterpret_cast<char*>(&v), sizeof v));
}
bool get_i64(std::istream& is, std::int64_t& v) {
  return bool(is.read(reinterpret_cast<char*>(&v), sizeof v));
}
bool get_string(std::istream& is, std::string& s) {
  std::uint64_t n;
  if (!get_u64(is, n) || n > (1ull << 32)) return false;
  s.resize(n);
  return bool(is.read(s.data(), static_cast<std::streamsize>(n)));
}

void put_matrix(std::ostream& os, const SparseIntMatrix& m) {
  put_u64(os, static_cast<std::uint64_t>(m.rows()));
  put_u64(os, static_cast<std::uint64_t>(m.cols()));
  put_u64(os, m.nnz());
  std::uint64_t wide = 0;
  for (Index c = 0; c < m.cols(); ++c) {
    put_u64(os, m.col_size(c));
    for (std::size_t e = m.col_begin(c); e != m.col_end(c); ++e) {
      put_u32(os, m.entry_row(e));
      if (m.entry_is_small(e)) {
        put_i64(os, m.entry_value_i64(e));
      } else {
        put_i64(os, INT64_MIN);
        ++wide;
      }
    }
  }
  put_u64(os, wide);
  for (Index c = 0; c < m.cols() && wide; ++c)
    for (std::size_t e = m.col_begin(c); e != m.col_end(c); ++e)
      if (!m.entry_is_small(e)) {
        put_u64(os, e);
        put_string(os, m.entry_value(e).str());
      }
}

bool get_matrix(std::istream& is, SparseIntMatrix& out) {
  std::uint64_t rows, cols, nnz;
  if (!get_u64(is, rows) || !get_u64(is, cols) || !get_u64(is, nnz))
    return false;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns(
      cols);
  std::uint64_t seen = 0;
  for (std::uint64_t c = 0; c < cols; ++c) {
    std::uint64_t len;
    if (!get_u64(is, len) || seen + len > nnz) return false;
    seen += len;
    columns[c].resize(len);
    for (auto& [r, v] : columns[c])
      if (!get_u32(is, r) || !get_i64(is, v)) return false;
  }
  std::uint64_t wide;
  if (!get_u64(is, wide) || seen != nnz) return false;

  if (wide == 0) {
    SparseIntMatrixBuilder builder(static_cast<Index>(rows));
    for (const auto& column : columns) builder.append_column(column);
    out = builder.take();
    return out.cols() == static_cast<Index>(cols);
  }
  // Wide entries are rare: fall back to the validating triplet path.
  std::vector<Triplet> triplets;
  std::vector<std::pair<std::uint64_t, Int>> wides(wide);
  for (auto& [e, v] : wides) {
    std::string digits;
    if (!get_u64(is, e) || !get_string(is, digits)) return false;
    v = Int(digits);
  }
  std::size_t flat = 0, wi = 0;
  for (std::uint64_t c = 0; c < cols; ++c)
    for (const auto& [r, v] : columns[c]) {
      Int value = v;
      if (v == INT64_MIN) {
        if (wi >= wides.size() || wides[wi].first != flat) return false;
        value = wides[wi++].second;
      }
      triplets.emplace_back(static_cast<Index>(r), static_cast<Index>(c),
                            std::move(value));
      ++flat;
    }
  out = SparseIntMatrix::from_triplets(static_cast<Index>(rows),
                                       static_cast<Index>(cols),
                                       std::move(triplets));
  return true;
}

}  // namespace

std::string file_name(const std::string& key) {
  std::string safe;
  for (char c : key)
    safe += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
             c == '_')
                ? c
                : '_';
  return safe + "-c" + std::to_string(orientation_convention) + ".cgc";
}

std::optional<ChainComplex> load(const std::filesystem::path& dir,
                                 const std::string& key) {
  std::ifstream is(dir / file_name(key), std::ios::binary);
  if (!is) return std::nullopt;
  char head[8];
  if (!is.read(head, 8) || !std::equal(head, head + 8, magic))
    return std::nullopt;
  std::uint32_t convention;
  if (!get_u32(is, convention) || convention != orientation_convention)
    return std::nullopt;
  std::string stored_key;
  if (!get_string(is, stored_key) || stored_key != key) return std::nullopt;

  ChainComplex cx;
  std::uint32_t aug;
  std::int64_t top;
  if (!get_string(is, cx.name) || !get_i64(is, top) || !get_u32(is, aug))
    return std::nullopt;
  cx.top_dim = static_cast<int>(top);
  cx.augmented = aug != 0;
  std::uint64_t n_names;
  if (!get_u64(is, n_names) || n_names > (1ull << 20)) return std::nullopt;
  cx.generator_names.resize(n_names);
  for (std::string& s : cx.generator_names)
    if (!get_string(is, s)) return std::nullopt;
  if (cx.top_dim < 0) return cx;

  const auto dims = static_cast<std::size_t>(cx.top_dim) + 1;
  cx.basis_sizes.resize(dims);
  cx.basis_labels.resize(dims);
  cx.boundaries.resize(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    std::uint64_t n;
    if (!get_u64(is, n)) return std::nullopt;
    cx.basis_sizes[d] = static_cast<Index>(n);
    cx.basis_labels[d].resize(n);
    for (std::uint64_t& label : cx.basis_labels[d])
      if (!get_u64(is, label)) return std::nullopt;
  }
  for (std::size_t d = 0; d < dims; ++d)
    if (!get_matrix(is, cx.boundaries[d])) return std::nullopt;
  return cx;
}

void store(const std::filesystem::path& dir, const std::string& key,
           const ChainComplex& cx) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path final_path = dir / file_name(key);
  const std::filesystem::path tmp_path =
      final_path.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream os(tmp_path, std::ios::binary | std::ios::trunc);
    os.write(magic, 8);
    put_u32(os, orientation_convention);
    put_string(os, key);
    put_string(os, cx.name);
    put_i64(os, cx.top_dim);
    put_u32(os, cx.augmented ? 1 : 0);
    put_u64(os, cx.generator_names.size());
    for (const std::string& s : cx.generator_names) put_string(os, s);
    if (cx.top_dim >= 0) {
      const auto dims = static_cast<std::size_t>(cx.top_dim) + 1;
      for (std::size_t d = 0; d < dims; ++d) {
        put_u64(os, static_cast<std::uint64_t>(cx.basis_sizes[d]));
        for (std::uint64_t label : cx.basis_labels[d]) put_u64(os, label);
      }
      for (std::size_t d = 0; d < dims; ++d) put_matrix(os, cx.boundaries[d]);
    }
    if (!os) {
      std::filesystem::remove(tmp_path);
      return;  // caching is best-effort; the caller recomputes next time
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) std::filesystem::remove(tmp_path);
}

}  // namespace cgh::cache
