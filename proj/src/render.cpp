#include "rsrepair/render.hpp"

#include <algorithm>
#include <sstream>

#include "rsrepair/error.hpp"

namespace rsrepair {

namespace {

std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++w;
  }
  return w;
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width - std::min(width, display_width(s)), ' ');
}

std::string cell(const Tower& tw, Elem x, bool ascii) {
  if (x.v == 0) return ascii ? "." : "·";
  return format_elem(tw, x, ascii);
}

}  // namespace

std::string format_elem(const Tower& tw, Elem x, bool ascii) {
  tw.check(x);
  if (x.v == 0) return "0";
  if (tw.has_log_table()) {
    const std::uint32_t e = *tw.log(x);
    const std::string xi = ascii ? "xi" : "ξ";
    if (e == 0) return "1";
    if (e == 1) return xi;
    return xi + "^" + std::to_string(e);
  }
  std::string out = "(";
  for (std::uint32_t i = 0; i < tw.t(); ++i) {
    if (i) out += ",";
    out += std::to_string(tw.coordinate(x, i).v);
  }
  return out + ")";
}

std::string check_label(const RepairScheme& scheme, std::size_t i, bool ascii) {
  const std::string name = "g_" + std::to_string(i + 1);
  const auto* dense = std::get_if<DenseCheck>(&scheme.checks().at(i));
  if (!dense) return name;
  const auto coeffs = poly_trim(dense->coeffs);
  if (coeffs.size() != 2) return name;
  const Tower& tw = scheme.tower();
  const Elem beta = coeffs[1];
  const Elem z = tw.neg(tw.div(coeffs[0], beta));
  const std::string lin = z.v == 0 ? "x" : "x-" + format_elem(tw, z, ascii);
  if (beta.v == 1) return name + " = " + lin;
  return name + " = " + format_elem(tw, beta, ascii) + "(" + lin + ")";
}

std::string render_table_text(const RepairScheme& scheme, bool ascii, std::size_t max_columns) {
  const RSCode& code = scheme.code();
  const Tower& tw = code.tower();
  if (code.n() > max_columns) {
    throw CapExceeded("table has " + std::to_string(code.n()) + " columns (text limit " +
                      std::to_string(max_columns) + "); use JSON output");
  }
  const std::size_t t = scheme.checks().size();
  std::vector<std::vector<std::string>> grid(t + 2, std::vector<std::string>(code.n() + 1));
  grid[0][0] = "A";
  for (std::size_t i = 0; i < t; ++i) grid[i + 1][0] = check_label(scheme, i, ascii);
  grid[t + 1][0] = "rank_" + std::to_string(tw.q()) + (ascii ? "(.)" : "(·)");
  for (std::size_t c = 0; c < code.n(); ++c) {
    const std::string pt = format_elem(tw, code.point(c), ascii);
    grid[0][c + 1] = c == scheme.erased() ? "*" + pt : pt;
    const auto col = scheme.column(c);
    for (std::size_t i = 0; i < t; ++i) grid[i + 1][c + 1] = cell(tw, col[i], ascii);
    grid[t + 1][c + 1] = std::to_string(rank_over_base(tw, scheme.folded_column(c)));
  }
  std::vector<std::size_t> width(code.n() + 1, 0);
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], display_width(row[c]));
  }
  std::ostringstream os;
  auto rule = [&] {
    for (std::size_t c = 0; c < width.size(); ++c) {
      os << (c ? "-+-" : "") << std::string(width[c], '-');
    }
    os << "\n";
  };
  for (std::size_t r = 0; r < grid.size(); ++r) {
    if (r == 1 || r == t + 1) rule();
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      os << (c ? " | " : "");
      // trailing spaces trimmed on the last column
      os << (c + 1 == grid[r].size() ? grid[r][c] : pad(grid[r][c], width[c]));
    }
    os << "\n";
  }
  return os.str();
}

Json render_table_json(const RepairScheme& scheme) {
  const RSCode& code = scheme.code();
  const Tower& tw = code.tower();
  Json j;
  j["field"] = field_to_json(tw);
  j["erased"] = scheme.erased();
  j["alpha_star"] = format_elem(tw, scheme.alpha_star());
  Json points = Json::array();
  Json ranks = Json::array();
  std::vector<std::vector<Elem>> cols;
  for (std::size_t c = 0; c < code.n(); ++c) {
    points.push_back(format_elem(tw, code.point(c)));
    cols.push_back(scheme.column(c));
    ranks.push_back(rank_over_base(tw, scheme.folded_column(c)));
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < scheme.checks().size(); ++i) {
    Json cells = Json::array();
    Json coeffs = Json::array();
    for (std::size_t c = 0; c < code.n(); ++c) {
      cells.push_back(format_elem(tw, cols[c][i]));
      coeffs.push_back(elem_to_json(tw, cols[c][i]));
    }
    rows.push_back({{"label", check_label(scheme, i)}, {"values", std::move(cells)}, {"coefficients", std::move(coeffs)}});
  }
  j["points"] = std::move(points);
  j["rows"] = std::move(rows);
  j["rank"] = std::move(ranks);
  return j;
}

}  // namespace rsrepair
