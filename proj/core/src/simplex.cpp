#include "conestream/simplex.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace conestream {

namespace {

template <typename Vec>
void require_valid(const Vec& vs) {
  if (vs.empty()) throw std::invalid_argument("simplex must have at least one vertex");
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
    throw std::invalid_argument("simplex has a repeated vertex");
}

}  // namespace

Simplex::Simplex(std::vector<VertexId> vertices) : vertices_(vertices.begin(), vertices.end()) {
  std::sort(vertices_.begin(), vertices_.end());
  require_valid(vertices_);
}

Simplex::Simplex(std::initializer_list<VertexId> vertices)
    : Simplex(std::vector<VertexId>(vertices)) {}

Simplex Simplex::from_sorted(std::span<const VertexId> vertices) {
  Simplex s;
  s.vertices_.assign(vertices.begin(), vertices.end());
  return s;
}

Simplex Simplex::from_sorted(std::initializer_list<VertexId> vertices) {
  Simplex s;
  s.vertices_.assign(vertices.begin(), vertices.end());
  return s;
}

Simplex Simplex::with(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it != vertices_.end() && *it == v)
    throw std::invalid_argument("join: vertex already belongs to the simplex");
  Simplex out = *this;
  out.vertices_.insert(out.vertices_.begin() + (it - vertices_.begin()), v);
  return out;
}

std::strong_ordering Simplex::operator<=>(const Simplex& o) const noexcept {
  return std::lexicographical_compare_three_way(vertices_.begin(), vertices_.end(), o.vertices_.begin(),
                                                o.vertices_.end());
}

bool Simplex::operator==(const Simplex& o) const noexcept {
  return std::equal(vertices_.begin(), vertices_.end(), o.vertices_.begin(), o.vertices_.end());
}

bool Simplex::contains(VertexId v) const noexcept {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

Simplex Simplex::without(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) throw std::invalid_argument("vertex is not part of the simplex");
  if (vertices_.size() == 1) throw std::invalid_argument("removing the only vertex of a simplex");
  Simplex out;
  out.vertices_.reserve(vertices_.size() - 1);
  out.vertices_.insert(out.vertices_.end(), vertices_.begin(), it);
  out.vertices_.insert(out.vertices_.end(), it + 1, vertices_.end());
  return out;
}

std::ostream& operator<<(std::ostream& os, const Simplex& s) {
  os << '{';
  for (std::size_t i = 0; i < s.vertices_.size(); ++i) {
    if (i) os << ',';
    os << s.vertices_[i];
  }
  return os << '}';
}

std::vector<Simplex> facets(const Simplex& s) {
  std::vector<Simplex> out;
  if (s.size() < 2) return out;
  auto vs = s.vertices();
  out.reserve(vs.size());
  for (std::size_t skip = 0; skip < vs.size(); ++skip) out.push_back(s.without(vs[skip]));
  return out;
}

Simplex join(VertexId v, const Simplex& s) { return s.with(v); }

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  // 64-bit FNV-1a over the vertex words, followed by a murmur-style finalizer.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (VertexId v : s.vertices()) {
    h ^= v;
    h *= 0x100000001b3ull;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return static_cast<std::size_t>(h);
}

}  // namespace conestream
