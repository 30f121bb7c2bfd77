#include "conestream/barcode.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "conestream/errors.hpp"
#include "line_tokens.hpp"

namespace conestream {

std::vector<Bar> Barcode::sorted() const {
  std::vector<Bar> out = bars_;
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Barcode::count(int dim) const {
  return static_cast<std::size_t>(
      std::count_if(bars_.begin(), bars_.end(), [dim](const Bar& b) { return b.dimension == dim; }));
}

std::size_t Barcode::count_essential(int dim) const {
  return static_cast<std::size_t>(std::count_if(bars_.begin(), bars_.end(), [dim](const Bar& b) {
    return b.dimension == dim && b.essential();
  }));
}

Barcode stamp_with_steps(const Barcode& b, std::span<const std::uint64_t> step_of) {
  Barcode out;
  for (const Bar& bar : b.bars()) {
    const std::uint64_t birth = step_of[bar.birth];
    if (bar.essential()) {
      out.add(bar.dimension, birth, kInfinity);
      continue;
    }
    const std::uint64_t death = step_of[bar.death];
    if (birth != death) out.add(bar.dimension, birth, death);
  }
  return out;
}

void write_barcode(std::ostream& os, const Barcode& b) {
  for (const Bar& bar : b.sorted()) {
    os << bar.dimension << ' ' << bar.birth << ' ';
    if (bar.essential())
      os << "inf";
    else
      os << bar.death;
    os << '\n';
  }
}

Barcode read_barcode(std::istream& is) {
  Barcode out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    detail::LineTokens tok(line, line_no);
    if (tok.empty()) continue;
    Bar bar;
    bar.dimension = static_cast<int>(tok.number("dimension"));
    bar.birth = tok.number("birth");
    const std::string_view death = tok.word("death");
    if (death == "inf") {
      bar.death = kInfinity;
    } else {
      bar.death = detail::parse_number(death, line_no, "death");
      if (bar.death <= bar.birth) throw FormatError(line_no, "death must be larger than birth");
    }
    tok.expect_end();
    out.add(bar);
  }
  return out;
}

}  // namespace conestream
