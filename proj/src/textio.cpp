#include "iwa/textio.hpp"

#include <json.hpp>
#include <sstream>

namespace iwa::textio {

namespace {

std::string trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void parse_fail(int line, const std::string &msg) {
  fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

Int parse_int(const std::string &s, int line) {
  std::string t = trim(s);
  if (t.empty()) parse_fail(line, "expected an integer");
  size_t i = t[0] == '-' || t[0] == '+' ? 1 : 0;
  if (i == t.size()) parse_fail(line, "expected digits after sign");
  for (; i < t.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(t[i])))
      parse_fail(line, "bad integer '" + t + "'");
  return Int(t);
}

long long parse_ll(const std::string &s, int line) {
  return static_cast<long long>(parse_int(s, line));
}

// key=value tokens on a directive line.
std::map<std::string, std::string> kv_args(const std::vector<std::string> &tokens,
                                           size_t from, int line) {
  std::map<std::string, std::string> out;
  for (size_t i = from; i < tokens.size(); ++i) {
    auto eq = tokens[i].find('=');
    if (eq == std::string::npos) parse_fail(line, "expected key=value: " + tokens[i]);
    out[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
  }
  return out;
}

std::vector<std::string> words(const std::string &s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

} // namespace

std::string series_to_string(const PowerSeriesElement &f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto &[m, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += c.str();
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0)
        out += "*X" + std::to_string(i + 1) + "^" + std::to_string(m[i]);
  }
  return out;
}

std::string entry_to_string(const GroupRingElement &a) {
  if (a.group().trivial()) return series_to_string(a.as_series());
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto &[g, f] : a.coeffs()) {
    if (!out.empty()) out += " + ";
    out += "[";
    for (size_t i = 0; i < g.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(g[i]);
    }
    out += "](" + series_to_string(f) + ")";
  }
  return out;
}

PowerSeriesElement parse_series(const std::string &text, const CtxPtr &ctx,
                                int level) {
  std::string t = trim(text);
  if (t.empty()) fail(ErrorKind::ParseError, "empty series");
  PowerSeriesElement f(ctx, level);
  if (t == "0") return f;
  for (const std::string &raw : split(t, '+')) {
    std::string term = trim(raw);
    if (term.empty()) fail(ErrorKind::ParseError, "empty term in series");
    Monomial m(level, 0);
    Int coeff = 1;
    bool saw_coeff = false;
    for (const std::string &piece_raw : split(term, '*')) {
      std::string piece = trim(piece_raw);
      if (piece.empty()) fail(ErrorKind::ParseError, "empty factor in term");
      if (piece[0] == 'X') {
        auto caret = piece.find('^');
        std::string var = caret == std::string::npos ? piece.substr(1)
                                                     : piece.substr(1, caret - 1);
        int idx = static_cast<int>(parse_ll(var, 0));
        int exp = caret == std::string::npos
                      ? 1
                      : static_cast<int>(parse_ll(piece.substr(caret + 1), 0));
        if (idx < 1 || idx > level)
          fail(ErrorKind::ParseError, "variable X" + std::to_string(idx) +
                                          " out of range for level " +
                                          std::to_string(level));
        if (exp < 0) fail(ErrorKind::ParseError, "negative exponent");
        m[idx - 1] += exp;
      } else {
        coeff = parse_int(piece, 0);
        saw_coeff = true;
      }
    }
    if (!saw_coeff && term[0] == 'X') coeff = 1;
    f.add_term(m, coeff);
  }
  return f;
}

GroupRingElement parse_entry(const std::string &text, const CtxPtr &ctx,
                             int level, const AbelianGroupSpec &group) {
  std::string t = trim(text);
  if (group.trivial())
    return GroupRingElement::from_series(parse_series(t, ctx, level), group);
  GroupRingElement out = GroupRingElement::zero(ctx, level, group);
  if (t == "0") return out;
  size_t pos = 0;
  while (pos < t.size()) {
    while (pos < t.size() && (isspace(static_cast<unsigned char>(t[pos])) || t[pos] == '+'))
      ++pos;
    if (pos >= t.size()) break;
    if (t[pos] != '[') fail(ErrorKind::ParseError, "expected [group element]");
    size_t close = t.find(']', pos);
    if (close == std::string::npos) fail(ErrorKind::ParseError, "unterminated group element");
    GroupElem g;
    for (const auto &part : split(t.substr(pos + 1, close - pos - 1), ','))
      g.push_back(static_cast<int>(parse_ll(part, 0)));
    if (static_cast<int>(g.size()) != group.rank())
      fail(ErrorKind::ParseError, "group element rank mismatch");
    pos = close + 1;
    if (pos >= t.size() || t[pos] != '(')
      fail(ErrorKind::ParseError, "expected (series) after group element");
    int depth = 1;
    size_t start = ++pos;
    while (pos < t.size() && depth > 0) {
      if (t[pos] == '(') ++depth;
      if (t[pos] == ')') --depth;
      ++pos;
    }
    if (depth != 0) fail(ErrorKind::ParseError, "unterminated (series)");
    out.add_coefficient(g, parse_series(t.substr(start, pos - 1 - start), ctx, level));
  }
  return out;
}

ParsedJob parse_job(const std::string &text,
                    std::optional<std::pair<int, int>> precision_override) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  bool saw_schema = false;
  long long p = 0;
  int N = 0, D = 0;
  ParsedJob job;

  enum class Block { None, Presentation, Tower, Ideal };
  Block block = Block::None;
  int level = 0, rows = 0, cols = 0;
  std::vector<std::vector<std::string>> entry_text;
  int tower_d = 0, tower_levels = 0, tower_cur = 0;
  std::vector<std::vector<std::vector<std::string>>> tower_text;
  std::vector<std::string> ideal_text;

  auto require_ctx = [&](int ln) {
    if (!job.ctx) parse_fail(ln, "context must precede this block");
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto toks = words(s);

    if (block == Block::Presentation || block == Block::Tower) {
      if (s == "end") {
        block = Block::None;
        continue;
      }
      if (block == Block::Tower && toks.size() == 2 && toks[0] == "level") {
        tower_cur = static_cast<int>(parse_ll(toks[1], lineno));
        if (tower_cur < 1 || tower_cur > tower_levels)
          parse_fail(lineno, "tower level out of range");
        continue;
      }
      if (toks.size() >= 3 && toks[0] == "entry") {
        auto eq = s.find('=');
        if (eq == std::string::npos) parse_fail(lineno, "entry needs '='");
        int i = static_cast<int>(parse_ll(toks[1], lineno));
        int j = static_cast<int>(parse_ll(toks[2], lineno));
        std::string value = trim(s.substr(eq + 1));
        int d_rows = block == Block::Presentation ? rows : tower_d;
        int d_cols = block == Block::Presentation ? cols : tower_d;
        if (i < 0 || i >= d_rows || j < 0 || j >= d_cols)
          parse_fail(lineno, "entry index out of range");
        if (block == Block::Presentation)
          entry_text[static_cast<size_t>(i)][static_cast<size_t>(j)] = value;
        else
          tower_text[static_cast<size_t>(tower_cur - 1)][static_cast<size_t>(i)]
                    [static_cast<size_t>(j)] = value;
        continue;
      }
      parse_fail(lineno, "unexpected line inside block: " + s);
    }

    if (block == Block::Ideal) {
      if (s == "end") {
        block = Block::None;
        continue;
      }
      if (toks.size() >= 2 && toks[0] == "gen") {
        auto eq = s.find('=');
        if (eq == std::string::npos) parse_fail(lineno, "gen needs '='");
        ideal_text.push_back(trim(s.substr(eq + 1)));
        continue;
      }
      parse_fail(lineno, "unexpected line inside ideal block: " + s);
    }

    if (toks[0] == "schema") {
      if (toks.size() != 2) parse_fail(lineno, "schema needs a version");
      job.schema = static_cast<int>(parse_ll(toks[1], lineno));
      if (job.schema != 1) parse_fail(lineno, "unsupported schema version");
      saw_schema = true;
    } else if (toks[0] == "context") {
      auto kv = kv_args(toks, 1, lineno);
      if (!kv.count("p") || !kv.count("N") || !kv.count("D"))
        parse_fail(lineno, "context needs p=, N=, D=");
      p = parse_ll(kv["p"], lineno);
      N = static_cast<int>(parse_ll(kv["N"], lineno));
      D = static_cast<int>(parse_ll(kv["D"], lineno));
      if (precision_override) {
        N = precision_override->first;
        D = precision_override->second;
      }
      try {
        job.ctx = PrecisionContext::make(p, N, D);
      } catch (const AlgebraError &e) {
        parse_fail(lineno, e.what());
      }
    } else if (toks[0] == "group") {
      if (toks.size() != 2) parse_fail(lineno, "group needs a comma list of orders");
      std::vector<int> orders;
      for (const auto &part : split(toks[1], ','))
        orders.push_back(static_cast<int>(parse_ll(part, lineno)));
      job.group = AbelianGroupSpec(orders);
    } else if (toks[0] == "presentation") {
      require_ctx(lineno);
      auto kv = kv_args(toks, 1, lineno);
      if (!kv.count("level") || !kv.count("rows") || !kv.count("cols"))
        parse_fail(lineno, "presentation needs level=, rows=, cols=");
      level = static_cast<int>(parse_ll(kv["level"], lineno));
      rows = static_cast<int>(parse_ll(kv["rows"], lineno));
      cols = static_cast<int>(parse_ll(kv["cols"], lineno));
      if (rows < 1 || cols < 1 || rows > 8 || cols > 8)
        parse_fail(lineno, "rows/cols out of range");
      entry_text.assign(static_cast<size_t>(rows),
                        std::vector<std::string>(static_cast<size_t>(cols), "0"));
      block = Block::Presentation;
    } else if (toks[0] == "tower") {
      require_ctx(lineno);
      auto kv = kv_args(toks, 1, lineno);
      if (!kv.count("d") || !kv.count("levels"))
        parse_fail(lineno, "tower needs d=, levels=");
      tower_d = static_cast<int>(parse_ll(kv["d"], lineno));
      tower_levels = static_cast<int>(parse_ll(kv["levels"], lineno));
      if (tower_d < 1 || tower_d > 8 || tower_levels < 1 || tower_levels > 16)
        parse_fail(lineno, "tower shape out of range");
      tower_cur = 1;
      tower_text.assign(
          static_cast<size_t>(tower_levels),
          std::vector<std::vector<std::string>>(
              static_cast<size_t>(tower_d),
              std::vector<std::string>(static_cast<size_t>(tower_d), "0")));
      block = Block::Tower;
    } else if (toks[0] == "ideal") {
      require_ctx(lineno);
      auto kv = kv_args(toks, 1, lineno);
      if (!kv.count("level")) parse_fail(lineno, "ideal needs level=");
      job.ideal_level = static_cast<int>(parse_ll(kv["level"], lineno));
      block = Block::Ideal;
    } else {
      parse_fail(lineno, "unknown directive '" + toks[0] + "'");
    }
  }
  if (block != Block::None) fail(ErrorKind::ParseError, "unterminated block (missing 'end')");
  if (!saw_schema) fail(ErrorKind::ParseError, "missing schema version tag");
  if (!job.ctx) fail(ErrorKind::ParseError, "missing context block");

  try {
    if (!entry_text.empty()) {
      Presentation P(job.ctx, level, job.group, rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
          P.set(i, j,
                parse_entry(entry_text[static_cast<size_t>(i)][static_cast<size_t>(j)],
                            job.ctx, level, job.group));
      job.presentation = std::move(P);
    }
    if (!tower_text.empty()) {
      std::vector<Presentation> levels;
      for (int jlev = 1; jlev <= tower_levels; ++jlev) {
        Presentation P(job.ctx, jlev, job.group, tower_d, tower_d);
        for (int i = 0; i < tower_d; ++i)
          for (int j = 0; j < tower_d; ++j)
            P.set(i, j,
                  parse_entry(tower_text[static_cast<size_t>(jlev - 1)]
                                        [static_cast<size_t>(i)][static_cast<size_t>(j)],
                              job.ctx, jlev, job.group));
        levels.push_back(std::move(P));
      }
      job.tower = Tower(std::move(levels));
    }
    for (const auto &g : ideal_text)
      job.ideal_gens.push_back(parse_series(g, job.ctx, *job.ideal_level));
  } catch (const AlgebraError &e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    fail(ErrorKind::ParseError, e.what());
  }
  return job;
}

std::string write_presentation_job(const Presentation &P) {
  std::ostringstream out;
  out << "schema 1\n";
  out << "context p=" << P.ctx()->p() << " N=" << P.ctx()->coeff_precision()
      << " D=" << P.ctx()->degree_cap() << "\n";
  if (!P.group().trivial()) {
    out << "group ";
    for (size_t i = 0; i < P.group().cyclic_orders.size(); ++i) {
      if (i) out << ",";
      out << P.group().cyclic_orders[i];
    }
    out << "\n";
  }
  out << "presentation level=" << P.level() << " rows=" << P.rows()
      << " cols=" << P.cols() << "\n";
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < P.cols(); ++j)
      out << "entry " << i << " " << j << " = " << entry_to_string(P.at(i, j))
          << "\n";
  out << "end\n";
  return out.str();
}

std::string write_tower_job(const Tower &T) {
  std::ostringstream out;
  out << "schema 1\n";
  const auto &ctx = *T.ctx();
  out << "context p=" << ctx.p() << " N=" << ctx.coeff_precision()
      << " D=" << ctx.degree_cap() << "\n";
  if (!T.group().trivial()) {
    out << "group ";
    for (size_t i = 0; i < T.group().cyclic_orders.size(); ++i) {
      if (i) out << ",";
      out << T.group().cyclic_orders[i];
    }
    out << "\n";
  }
  out << "tower d=" << T.dim() << " levels=" << T.size() << "\n";
  for (int j = 1; j <= T.size(); ++j) {
    out << "level " << j << "\n";
    for (int r = 0; r < T.dim(); ++r)
      for (int c = 0; c < T.dim(); ++c)
        out << "entry " << r << " " << c << " = "
            << entry_to_string(T.level(j).at(r, c)) << "\n";
  }
  out << "end\n";
  return out.str();
}

std::string write_ideal_job(const CtxPtr &ctx, const AbelianGroupSpec &group,
                            int level, const std::vector<PowerSeriesElement> &gens) {
  std::ostringstream out;
  out << "schema 1\n";
  out << "context p=" << ctx->p() << " N=" << ctx->coeff_precision()
      << " D=" << ctx->degree_cap() << "\n";
  if (!group.trivial()) {
    out << "group ";
    for (size_t i = 0; i < group.cyclic_orders.size(); ++i) {
      if (i) out << ",";
      out << group.cyclic_orders[i];
    }
    out << "\n";
  }
  out << "ideal level=" << level << "\n";
  for (const auto &g : gens) out << "gen = " << series_to_string(g) << "\n";
  out << "end\n";
  return out.str();
}

namespace {

void render_node(const nlohmann::ordered_json &node, int indent, std::string &out) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  if (node.is_object()) {
    for (const auto &[k, v] : node.items()) {
      if (v.is_object() || v.is_array()) {
        out += pad + k + ":\n";
        render_node(v, indent + 1, out);
      } else {
        out += pad + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
      }
    }
  } else if (node.is_array()) {
    int i = 0;
    for (const auto &v : node) {
      if (v.is_object() || v.is_array()) {
        out += pad + "- [" + std::to_string(i) + "]\n";
        render_node(v, indent + 1, out);
      } else {
        out += pad + "- " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
      }
      ++i;
    }
  } else {
    out += pad + (node.is_string() ? node.get<std::string>() : node.dump()) + "\n";
  }
}

} // namespace

std::string render_human(const std::string &json_text) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(json_text);
  std::string out;
  render_node(j, 0, out);
  return out;
}

} // namespace iwa::textio
