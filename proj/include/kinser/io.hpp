#pragma once

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kinser/catalog.hpp"
#include "kinser/circuits.hpp"
#include "kinser/errors.hpp"
#include "kinser/gfp.hpp"
#include "kinser/inequality.hpp"
#include "kinser/matroid.hpp"
#include "kinser/search.hpp"
#include "kinser/transversal.hpp"

namespace kinser {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::optional<long long> to_int(std::string_view s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline long long require_int(std::string_view s, int line, const char* what) {
  auto v = to_int(s);
  if (!v) throw ParseError(line, std::string("expected an integer for ") + what + ", got '" + std::string(s) + "'");
  return *v;
}

/// "-" or a comma-separated list of element indices below m.
inline SubsetMask parse_element_list(std::string_view s, int m, int line) {
  s = trim(s);
  if (s == "-" || s.empty()) return 0;
  SubsetMask x = 0;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    const auto tok = trim(s.substr(start, comma - start));
    const auto v = to_int(tok);
    if (!v || *v < 0 || *v >= m) {
      throw ParseError(line, "bad element '" + std::string(tok) + "' for a ground set of size " + std::to_string(m));
    }
    x |= bit(static_cast<int>(*v));
    start = comma + 1;
  }
  return x;
}

struct Lines {
  std::vector<std::string> text;
  std::vector<int> number;
};

/// Non-blank lines with comments removed, keeping their 1-based line numbers.
inline Lines significant_lines(std::string_view text) {
  Lines out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    std::string_view s = raw;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    out.text.emplace_back(s);
    out.number.push_back(no);
  }
  return out;
}

inline bool starts_with_word(std::string_view s, std::string_view word) {
  return s.substr(0, word.size()) == word && (s.size() == word.size() || s[word.size()] == ' ');
}

}  // namespace detail

// ---- matroid files ---------------------------------------------------------

/// Text form with a full "ranks" body, 16 values per line.
inline std::string write_matroid(const Matroid& M) {
  std::string out = "matroid v1\n";
  out += "# subsets are bitmasks: element i is bit i\n";
  if (!M.label().empty()) out += "label " + M.label() + "\n";
  out += "elements " + std::to_string(M.size()) + "\n";
  out += "rank " + std::to_string(M.rank()) + "\n";
  out += "ranks\n";
  const auto t = M.table();
  for (std::size_t x = 0; x < t.size(); ++x) {
    out += std::to_string(t[x]);
    out += (x % 16 == 15 || x + 1 == t.size()) ? '\n' : ' ';
  }
  if (M.layout()) {
    for (const auto& [name, mask] : M.layout()->entries()) out += "layout " + name + "=" + format_mask(mask) + "\n";
  }
  return out;
}

/// Reads any of the body kinds (ranks, circuits, matrix p=P, transversal) and validates the result.
inline Matroid parse_matroid(std::string_view text) {
  const auto L = detail::significant_lines(text);
  std::size_t i = 0;
  auto line_no = [&](std::size_t k) { return k < L.number.size() ? L.number[k] : 0; };
  if (L.text.empty() || L.text[0] != "matroid v1") throw ParseError(line_no(0), "missing 'matroid v1' header");
  ++i;
  std::string label;
  std::optional<int> m;
  std::optional<int> r;
  PartLayout layout;
  bool have_layout = false;
  std::optional<Matroid> result;

  auto need_m = [&](std::size_t k) {
    if (!m) throw ParseError(line_no(k), "body appears before 'elements'");
    return *m;
  };
  auto is_keyword = [](std::string_view s) {
    for (std::string_view kw : {"label", "elements", "rank", "ranks", "circuits", "matrix", "transversal", "layout"}) {
      if (detail::starts_with_word(s, kw)) return true;
    }
    return false;
  };
  auto body_end = [&](std::size_t from) {
    std::size_t k = from;
    while (k < L.text.size() && !is_keyword(L.text[k])) ++k;
    return k;
  };

  while (i < L.text.size()) {
    const std::string& s = L.text[i];
    const int no = line_no(i);
    const auto words = detail::split_ws(s);
    if (detail::starts_with_word(s, "label")) {
      label = std::string(detail::trim(std::string_view(s).substr(5)));
      ++i;
    } else if (words[0] == "elements") {
      if (words.size() != 2) throw ParseError(no, "expected 'elements <m>'");
      const long long v = detail::require_int(words[1], no, "elements");
      if (v < 1 || v > kMaxGround) throw ParseError(no, "element count must lie in 1..24");
      m = static_cast<int>(v);
      ++i;
    } else if (words[0] == "rank") {
      if (words.size() != 2) throw ParseError(no, "expected 'rank <r>'");
      r = static_cast<int>(detail::require_int(words[1], no, "rank"));
      ++i;
    } else if (words[0] == "layout") {
      const auto eq = s.find('=');
      if (eq == std::string::npos || words.size() < 2) throw ParseError(no, "expected 'layout name=list'");
      const std::string name(detail::trim(std::string_view(s).substr(6, eq - 6)));
      if (name.empty()) throw ParseError(no, "layout entry has no name");
      layout.set(name, detail::parse_element_list(std::string_view(s).substr(eq + 1), need_m(i), no));
      have_layout = true;
      ++i;
    } else if (words[0] == "ranks" || words[0] == "circuits" || words[0] == "matrix" || words[0] == "transversal") {
      if (result) throw ParseError(no, "more than one body section");
      const int mm = need_m(i);
      const std::size_t end = body_end(i + 1);
      if (words[0] == "ranks") {
        std::vector<std::uint8_t> table;
        table.reserve(std::size_t{1} << mm);
        for (std::size_t k = i + 1; k < end; ++k) {
          for (auto w : detail::split_ws(L.text[k])) {
            const long long v = detail::require_int(w, line_no(k), "a rank value");
            if (v < 0 || v > 255) throw ParseError(line_no(k), "rank value out of range");
            table.push_back(static_cast<std::uint8_t>(v));
          }
        }
        if (table.size() != (std::size_t{1} << mm)) {
          throw ParseError(no, "ranks body has " + std::to_string(table.size()) + " values, expected " +
                                   std::to_string(std::size_t{1} << mm));
        }
        result = Matroid::from_table(mm, std::move(table));
      } else if (words[0] == "circuits") {
        if (!r) throw ParseError(no, "circuits body needs a declared rank");
        std::vector<SubsetMask> circuits;
        for (std::size_t k = i + 1; k < end; ++k) {
          circuits.push_back(detail::parse_element_list(L.text[k], mm, line_no(k)));
        }
        result = matroid_from_circuits(mm, *r, circuits);
      } else if (words[0] == "matrix") {
        if (words.size() != 2 || words[1].substr(0, 2) != "p=") throw ParseError(no, "expected 'matrix p=<prime>'");
        const int p = static_cast<int>(detail::require_int(words[1].substr(2), no, "p"));
        std::vector<int> entries;
        int rows = 0;
        for (std::size_t k = i + 1; k < end; ++k) {
          const auto ws = detail::split_ws(L.text[k]);
          if (static_cast<int>(ws.size()) != mm) {
            throw ParseError(line_no(k), "matrix row has " + std::to_string(ws.size()) + " entries, expected " +
                                             std::to_string(mm));
          }
          for (auto w : ws) entries.push_back(static_cast<int>(detail::require_int(w, line_no(k), "a matrix entry")));
          ++rows;
        }
        try {
          result = from_matrix(MatrixGFp(p, rows, mm, std::move(entries)));
        } catch (const PreconditionError& e) {
          throw ParseError(no, e.what());
        }
      } else {
        SetSystem S{mm, {}};
        for (std::size_t k = i + 1; k < end; ++k) {
          S.family.push_back(detail::parse_element_list(L.text[k], mm, line_no(k)));
        }
        result = transversal(S);
      }
      i = end;
    } else {
      throw ParseError(no, "unknown line '" + s + "'");
    }
  }
  if (!result) throw ParseError(0, "no body section (ranks, circuits, matrix or transversal)");
  if (r && *r != result->rank()) {
    throw ParseError(0, "declared rank " + std::to_string(*r) + " but the body has rank " +
                            std::to_string(result->rank()));
  }
  Matroid out = result->relabeled(label);
  if (have_layout) out = out.with_layout(layout);
  return out;
}

// ---- certificates ----------------------------------------------------------

inline std::string write_certificate(const BadFamilyCertificate& c) {
  std::string out = "kinser-certificate v1\n";
  out += "matroid " + (c.label.empty() ? std::string("-") : c.label) + " " + c.fingerprint + "\n";
  out += "n " + std::to_string(c.family.n) + "\n";
  for (int i = 1; i <= c.family.n; ++i) out += "X" + std::to_string(i) + " " + format_mask(c.family.x(i)) + "\n";
  out += "lhs " + std::to_string(c.lhs) + "\n";
  out += "rhs " + std::to_string(c.rhs) + "\n";
  return out;
}

/// Parses without checking against any matroid.
inline BadFamilyCertificate parse_certificate(std::string_view text) {
  const auto L = detail::significant_lines(text);
  auto line_no = [&](std::size_t k) { return k < L.number.size() ? L.number[k] : 0; };
  if (L.text.empty() || L.text[0] != "kinser-certificate v1") {
    throw ParseError(line_no(0), "missing 'kinser-certificate v1' header");
  }
  BadFamilyCertificate c;
  std::size_t i = 1;
  auto expect = [&](std::string_view key) -> std::string {
    if (i >= L.text.size()) throw ParseError(0, "certificate ends before '" + std::string(key) + "'");
    const std::string& s = L.text[i];
    if (!detail::starts_with_word(s, key)) {
      throw ParseError(line_no(i), "expected '" + std::string(key) + "', got '" + s + "'");
    }
    ++i;
    return std::string(detail::trim(std::string_view(s).substr(key.size())));
  };
  {
    const int no = line_no(i);
    const std::string rest = expect("matroid");
    const auto sp = rest.rfind(' ');
    if (sp == std::string::npos) throw ParseError(no, "expected 'matroid <label> <fingerprint>'");
    c.label = std::string(detail::trim(std::string_view(rest).substr(0, sp)));
    if (c.label == "-") c.label.clear();
    c.fingerprint = rest.substr(sp + 1);
  }
  const int no_n = line_no(i);
  const long long n = detail::require_int(expect("n"), no_n, "n");
  if (n < 4 || n > 64) throw ParseError(no_n, "n must be at least 4");
  std::vector<SubsetMask> sets;
  for (int k = 1; k <= n; ++k) {
    const int no = line_no(i);
    sets.push_back(detail::parse_element_list(expect("X" + std::to_string(k)), kMaxGround, no));
  }
  c.family = Family(std::move(sets));
  const int no_l = line_no(i);
  c.lhs = static_cast<int>(detail::require_int(expect("lhs"), no_l, "lhs"));
  const int no_r = line_no(i);
  c.rhs = static_cast<int>(detail::require_int(expect("rhs"), no_r, "rhs"));
  if (i != L.text.size()) throw ParseError(line_no(i), "trailing content after 'rhs'");
  return c;
}

/// Re-evaluates the certificate against M; throws StaleCertificate on any mismatch.
inline InequalityValue verify_certificate(const BadFamilyCertificate& c, const Matroid& M) {
  const std::string fp = content_fingerprint(M);
  if (fp != c.fingerprint) {
    throw StaleCertificate("certificate is bound to matroid " + c.fingerprint + ", got " + fp);
  }
  const InequalityValue v = evaluate(M, c.family);
  if (v.lhs != c.lhs || v.rhs != c.rhs) {
    throw StaleCertificate("certificate records lhs " + std::to_string(c.lhs) + ", rhs " + std::to_string(c.rhs) +
                           " but re-evaluation gives " + std::to_string(v.lhs) + ", " + std::to_string(v.rhs));
  }
  if (v.satisfied()) throw StaleCertificate("certificate family does not violate the inequality");
  return v;
}

inline BadFamilyCertificate load_certificate(std::string_view text, const Matroid& M) {
  BadFamilyCertificate c = parse_certificate(text);
  verify_certificate(c, M);
  return c;
}

// ---- family specs ----------------------------------------------------------

/// "X1;X2;...;Xn" where each X is a '+'-joined union of layout names, element lists
/// written with commas, or "-" for the empty set. Example: "V1+V2;V3;0,1;-".
inline Family parse_family_spec(std::string_view spec, const Matroid& M) {
  std::vector<SubsetMask> sets;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t semi = spec.find(';', start);
    if (semi == std::string_view::npos) semi = spec.size();
    const auto part = detail::trim(spec.substr(start, semi - start));
    SubsetMask x = 0;
    std::size_t p = 0;
    while (p <= part.size()) {
      std::size_t plus = part.find('+', p);
      if (plus == std::string_view::npos) plus = part.size();
      const auto tok = detail::trim(part.substr(p, plus - p));
      if (tok.empty()) throw ParseError(0, "empty term in family spec '" + std::string(spec) + "'");
      if (tok == "-" || std::isdigit(static_cast<unsigned char>(tok.front()))) {
        x |= detail::parse_element_list(tok, M.size(), 0);
      } else {
        auto named = M.layout() ? M.layout()->find(tok) : std::nullopt;
        if (!named) throw ParseError(0, "unknown part name '" + std::string(tok) + "'");
        x |= *named;
      }
      p = plus + 1;
    }
    sets.push_back(x);
    start = semi + 1;
  }
  return Family(std::move(sets));
}

}  // namespace kinser
