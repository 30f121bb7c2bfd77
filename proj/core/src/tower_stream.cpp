#include "conestream/tower_stream.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "conestream/errors.hpp"
#include "line_tokens.hpp"

namespace conestream {

namespace {

VertexId vertex_token(detail::LineTokens& tok) {
  const std::uint64_t v = tok.number("vertex id");
  if (v > std::numeric_limits<VertexId>::max())
    throw FormatError(tok.line(), "vertex id " + std::to_string(v) + " out of range");
  return static_cast<VertexId>(v);
}

}  // namespace

std::optional<TowerOp> TowerReader::next() {
  while (std::getline(*in_, buf_)) {
    ++line_;
    detail::LineTokens tok(buf_, line_);
    if (tok.empty()) continue;
    const std::string_view kind = tok.word("op");
    if (kind == "i") {
      std::vector<VertexId> vs;
      while (!tok.empty()) vs.push_back(vertex_token(tok));
      if (vs.empty()) throw FormatError(line_, "inclusion without vertices");
      std::sort(vs.begin(), vs.end());
      if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        throw FormatError(line_, "inclusion repeats a vertex");
      return TowerOp::inclusion(Simplex::from_sorted(std::move(vs)));
    }
    if (kind == "c") {
      const VertexId u = vertex_token(tok);
      const VertexId v = vertex_token(tok);
      tok.expect_end();
      if (u == v) throw FormatError(line_, "contraction of a vertex with itself");
      return TowerOp::contraction(u, v);
    }
    throw FormatError(line_, "unknown tower op '" + std::string(kind) + "'");
  }
  return std::nullopt;
}

void write_tower_op(std::ostream& os, const TowerOp& op) {
  if (op.is_inclusion()) {
    os << 'i';
    for (VertexId v : op.simplex.vertices()) os << ' ' << v;
  } else {
    os << "c " << op.u << ' ' << op.v;
  }
  os << '\n';
}

void write_tower(std::ostream& os, std::span<const TowerOp> ops) {
  for (const auto& op : ops) write_tower_op(os, op);
}

std::vector<TowerOp> read_tower(std::istream& in) {
  TowerReader reader(in);
  std::vector<TowerOp> out;
  while (auto op = reader.next()) out.push_back(std::move(*op));
  return out;
}

std::vector<TowerOp> parse_tower(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_tower(in);
}

void FiltrationValidator::check(const FiltrationEvent& ev) {
  if (!ev.is_addition()) {
    if (ev.id >= next_id_) throw InputError("inactive event for id " + std::to_string(ev.id) + " that was never added");
    if (live_dims_.erase(ev.id) == 0)
      throw InputError("inactive event for id " + std::to_string(ev.id) + " that is already inactive");
    return;
  }
  if (ev.id != next_id_)
    throw InputError("expected addition id " + std::to_string(next_id_) + ", got " + std::to_string(ev.id));
  if (ev.dimension < 0) throw InputError("negative dimension");
  const std::size_t expected = ev.dimension == 0 ? 0 : static_cast<std::size_t>(ev.dimension) + 1;
  if (ev.facets.size() != expected)
    throw InputError("simplex " + std::to_string(ev.id) + " of dimension " + std::to_string(ev.dimension) +
                     " needs " + std::to_string(expected) + " facets");
  for (std::size_t i = 0; i < ev.facets.size(); ++i) {
    const SimplexIndex f = ev.facets[i];
    if (i > 0 && f <= ev.facets[i - 1]) throw InputError("facet ids must be strictly increasing");
    if (f >= ev.id) throw InputError("facet id " + std::to_string(f) + " is not an earlier simplex");
    auto it = live_dims_.find(f);
    if (it == live_dims_.end()) throw InputError("facet id " + std::to_string(f) + " is not live");
    if (it->second != ev.dimension - 1)
      throw InputError("facet id " + std::to_string(f) + " has the wrong dimension");
  }
  live_dims_.emplace(ev.id, ev.dimension);
  ++next_id_;
}

std::optional<FiltrationEvent> FiltrationReader::next() {
  while (std::getline(*in_, buf_)) {
    ++line_;
    detail::LineTokens tok(buf_, line_);
    if (tok.empty()) continue;
    const std::string_view kind = tok.word("event");
    FiltrationEvent ev;
    if (kind == "a") {
      ev.kind = FiltrationEvent::Kind::Addition;
      ev.id = tok.number("id");
      const std::uint64_t dim = tok.number("dimension");
      if (dim > 1024) throw FormatError(line_, "dimension out of range");
      ev.dimension = static_cast<int>(dim);
      while (!tok.empty()) ev.facets.push_back(tok.number("facet id"));
    } else if (kind == "d") {
      ev.kind = FiltrationEvent::Kind::Inactive;
      ev.id = tok.number("id");
      tok.expect_end();
    } else {
      throw FormatError(line_, "unknown filtration event '" + std::string(kind) + "'");
    }
    try {
      validator_.check(ev);
    } catch (const FormatError&) {
      throw;
    } catch (const InputError& e) {
      throw FormatError(line_, e.what());
    }
    return ev;
  }
  return std::nullopt;
}

void write_event(std::ostream& os, const FiltrationEvent& ev) {
  if (ev.is_addition()) {
    os << "a " << ev.id << ' ' << ev.dimension;
    for (SimplexIndex f : ev.facets) os << ' ' << f;
  } else {
    os << "d " << ev.id;
  }
  os << '\n';
}

void write_filtration(std::ostream& os, std::span<const FiltrationEvent> events) {
  for (const auto& ev : events) write_event(os, ev);
}

std::vector<FiltrationEvent> read_filtration(std::istream& in) {
  FiltrationReader reader(in);
  std::vector<FiltrationEvent> out;
  while (auto ev = reader.next()) out.push_back(std::move(*ev));
  return out;
}

std::vector<FiltrationEvent> parse_filtration(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_filtration(in);
}

}  // namespace conestream
