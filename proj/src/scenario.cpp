#include "mvx/scenario.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "mvx/errors.hpp"
#include "mvx/expr_parse.hpp"

namespace mvx {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

struct KeyLine {
  std::string key, value;
  int line;
  int value_col;  // 1-based column where the value starts
};

// Splits "key = value"; returns false for lines without '='.
bool split_kv(const std::string& raw, int line_no, KeyLine& out) {
  size_t eq = raw.find('=');
  if (eq == std::string::npos) return false;
  out.key = trim(raw.substr(0, eq));
  std::string rest = raw.substr(eq + 1);
  size_t lead = rest.find_first_not_of(" \t");
  out.value = trim(rest);
  out.line = line_no;
  out.value_col =
      static_cast<int>(eq + 2 + (lead == std::string::npos ? 0 : lead));
  return true;
}

// "g[1][2]" -> {1, 2}; throws on malformed index lists.
std::vector<int> parse_indices(const std::string& key, const std::string& head,
                               int count, int line) {
  std::string rest = key.substr(head.size());
  std::vector<int> idx;
  size_t p = 0;
  for (int k = 0; k < count; ++k) {
    if (p >= rest.size() || rest[p] != '[')
      throw ParseError(line, 1, "malformed index in key '" + key + "'");
    size_t close = rest.find(']', p);
    if (close == std::string::npos)
      throw ParseError(line, 1, "missing ']' in key '" + key + "'");
    int v = std::atoi(rest.substr(p + 1, close - p - 1).c_str());
    idx.push_back(v);
    p = close + 1;
  }
  if (p != rest.size())
    throw ParseError(line, 1, "trailing characters in key '" + key + "'");
  return idx;
}

blade_t parse_blade_token(const std::string& tok, int dim, int line) {
  if (tok == "s") return 0;
  if (tok.size() < 2 || tok[0] != 'e')
    throw ParseError(line, 1, "bad blade token '" + tok + "'");
  blade_t m = 0;
  for (size_t i = 1; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw ParseError(line, 1, "bad blade token '" + tok + "'");
    int mu = tok[i] - '0';
    if (mu < 1 || mu > dim)
      throw ParseError(line, 1, "blade index out of range in '" + tok + "'");
    blade_t bit = blade_t{1} << (mu - 1);
    if (m & bit)
      throw ParseError(line, 1, "repeated index in blade '" + tok + "'");
    m |= bit;
  }
  return m;
}

double parse_double(const std::string& v, int line) {
  char* end = nullptr;
  double d = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size())
    throw ParseError(line, 1, "malformed number '" + v + "'");
  return d;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::string section;  // "" = header

  // Raw entries are collected first so the metric symmetry check can name
  // both offending lines; expressions are parsed where encountered.
  struct RawEntry {
    std::string value;
    int line, col;
  };
  std::map<std::string, RawEntry> metric_raw;
  std::map<std::string, RawEntry> gamma_raw;
  std::vector<std::pair<int, RawEntry>> chart_map_raw;  // (index, entry)
  std::vector<double> box_lo, box_hi;
  std::vector<bool> box_set;
  std::map<std::string, std::map<blade_t, RawEntry>> field_raw;
  std::vector<std::string> field_order;

  auto need_dim = [&](int line) {
    if (sc.dim == 0)
      throw ParseError(line, 1, "dim must be declared before this entry");
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[' && s.back() == ']') {
      section = s.substr(1, s.size() - 2);
      if (section != "metric" && section != "connection" &&
          section != "fields" && section != "chart_map" && section != "suites")
        throw ParseError(line_no, 1, "unknown section [" + section + "]");
      continue;
    }

    if (section == "suites") {
      for (std::string tok : {s}) {
        std::istringstream ts(tok);
        std::string one;
        while (std::getline(ts, one, ',')) {
          one = trim(one);
          if (!one.empty()) sc.suites.push_back(one);
        }
      }
      continue;
    }

    KeyLine kv;
    if (!split_kv(s, line_no, kv))
      throw ParseError(line_no, 1, "expected 'key = value'");

    if (section.empty()) {
      if (kv.key == "name") {
        sc.name = kv.value;
      } else if (kv.key == "dim") {
        sc.dim = std::atoi(kv.value.c_str());
        if (sc.dim < 1 || sc.dim > kMaxDim)
          throw ParseError(line_no, kv.value_col, "dim out of range [1,10]");
        box_lo.assign(sc.dim, 0.0);
        box_hi.assign(sc.dim, 0.0);
        box_set.assign(sc.dim, false);
      } else if (kv.key.rfind("box.x", 0) == 0) {
        need_dim(line_no);
        int mu = std::atoi(kv.key.c_str() + 5);
        if (mu < 1 || mu > sc.dim)
          throw ParseError(line_no, 1, "box coordinate out of range");
        std::string v = strip_spaces(kv.value);
        if (v.size() < 5 || v.front() != '(' || v.back() != ')')
          throw ParseError(line_no, kv.value_col,
                           "box interval must look like (lo, hi)");
        size_t comma = v.find(',');
        if (comma == std::string::npos)
          throw ParseError(line_no, kv.value_col, "missing ',' in interval");
        box_lo[mu - 1] = parse_double(v.substr(1, comma - 1), line_no);
        box_hi[mu - 1] =
            parse_double(v.substr(comma + 1, v.size() - comma - 2), line_no);
        if (!(box_lo[mu - 1] < box_hi[mu - 1]))
          throw ParseError(line_no, kv.value_col, "empty box interval");
        box_set[mu - 1] = true;
      } else if (kv.key == "points") {
        sc.points = std::atoi(kv.value.c_str());
        if (sc.points < 1)
          throw ParseError(line_no, kv.value_col, "points must be positive");
      } else if (kv.key == "seed") {
        sc.seed = std::strtoull(kv.value.c_str(), nullptr, 10);
      } else if (kv.key == "tol_first") {
        sc.tol_first = parse_double(kv.value, line_no);
      } else if (kv.key == "tol_second") {
        sc.tol_second = parse_double(kv.value, line_no);
      } else if (kv.key.rfind("tol[", 0) == 0) {
        size_t close = kv.key.find(']');
        if (close == std::string::npos || close != kv.key.size() - 1)
          throw ParseError(line_no, 1, "malformed tol[...] key");
        sc.tol_override[kv.key.substr(4, close - 4)] =
            parse_double(kv.value, line_no);
      } else if (kv.key == "expect_flat") {
        sc.expect_flat = (kv.value == "true" || kv.value == "1");
      } else if (kv.key == "signature") {
        std::string v = strip_spaces(kv.value);
        size_t comma = v.find(',');
        if (comma == std::string::npos)
          throw ParseError(line_no, kv.value_col,
                           "signature must be 'p,q'");
        sc.sig_p = std::atoi(v.substr(0, comma).c_str());
        sc.sig_q = std::atoi(v.substr(comma + 1).c_str());
      } else {
        throw ParseError(line_no, 1, "unknown key '" + kv.key + "'");
      }
      continue;
    }

    if (section == "metric") {
      need_dim(line_no);
      if (kv.key.rfind("g[", 0) != 0)
        throw ParseError(line_no, 1, "unknown key '" + kv.key +
                                         "' in [metric] (expected g[i][j])");
      auto idx = parse_indices(kv.key, "g", 2, line_no);
      if (idx[0] < 1 || idx[0] > sc.dim || idx[1] < 1 || idx[1] > sc.dim)
        throw ParseError(line_no, 1, "metric index out of range");
      metric_raw[kv.key] = {kv.value, line_no, kv.value_col};
      continue;
    }

    if (section == "connection") {
      need_dim(line_no);
      if (kv.key == "levi_civita") {
        sc.levi_civita_requested = (kv.value == "true" || kv.value == "1");
        continue;
      }
      if (kv.key.rfind("gamma[", 0) != 0)
        throw ParseError(line_no, 1,
                         "unknown key '" + kv.key +
                             "' in [connection] (expected gamma[l][m][n])");
      auto idx = parse_indices(kv.key, "gamma", 3, line_no);
      for (int v : idx)
        if (v < 1 || v > sc.dim)
          throw ParseError(line_no, 1, "connection index out of range");
      gamma_raw[kv.key] = {kv.value, line_no, kv.value_col};
      continue;
    }

    if (section == "chart_map") {
      need_dim(line_no);
      // keys look like  x1' = <expr>
      std::string k = kv.key;
      if (k.size() < 3 || k[0] != 'x' || k.back() != '\'')
        throw ParseError(line_no, 1,
                         "chart map keys look like x1' = <expr>");
      int mu = std::atoi(k.substr(1, k.size() - 2).c_str());
      if (mu < 1 || mu > sc.dim)
        throw ParseError(line_no, 1, "chart map coordinate out of range");
      chart_map_raw.push_back({mu, {kv.value, line_no, kv.value_col}});
      continue;
    }

    if (section == "fields") {
      need_dim(line_no);
      // name.coeff(<blade>) = <expr>
      size_t dot = kv.key.find(".coeff(");
      if (dot == std::string::npos || kv.key.back() != ')')
        throw ParseError(line_no, 1,
                         "field keys look like name.coeff(e12) = <expr>");
      std::string fname = kv.key.substr(0, dot);
      std::string bl = kv.key.substr(dot + 7, kv.key.size() - dot - 8);
      blade_t m = parse_blade_token(bl, sc.dim, line_no);
      if (!field_raw.count(fname)) field_order.push_back(fname);
      field_raw[fname][m] = {kv.value, line_no, kv.value_col};
      continue;
    }
  }

  if (sc.dim == 0) throw ParseError(line_no, 1, "missing 'dim'");
  for (int i = 0; i < sc.dim; ++i)
    if (!box_set[i])
      throw ParseError(line_no, 1,
                       "missing box.x" + std::to_string(i + 1) + " interval");
  sc.chart = Chart::box(box_lo, box_hi);

  if (!metric_raw.empty()) {
    // Symmetry: if both triangles are present their text must agree.
    for (int i = 1; i <= sc.dim; ++i)
      for (int j = i + 1; j <= sc.dim; ++j) {
        std::string kij = "g[" + std::to_string(i) + "][" + std::to_string(j) + "]";
        std::string kji = "g[" + std::to_string(j) + "][" + std::to_string(i) + "]";
        auto a = metric_raw.find(kij), b = metric_raw.find(kji);
        if (a != metric_raw.end() && b != metric_raw.end() &&
            strip_spaces(a->second.value) != strip_spaces(b->second.value))
          throw ParseError(b->second.line, 1,
                           "asymmetric metric table: " + kij + " (line " +
                               std::to_string(a->second.line) + ") = '" +
                               a->second.value + "' but " + kji + " = '" +
                               b->second.value + "'");
      }
    XF m(sc.dim);
    for (int i = 1; i <= sc.dim; ++i)
      for (int j = 1; j <= sc.dim; ++j) {
        std::string k = "g[" + std::to_string(i) + "][" + std::to_string(j) + "]";
        std::string kt = "g[" + std::to_string(j) + "][" + std::to_string(i) + "]";
        auto it = metric_raw.find(k);
        if (it == metric_raw.end()) it = metric_raw.find(kt);
        if (it == metric_raw.end()) continue;  // zero entry
        Expr e = parse_expr(it->second.value, sc.dim, it->second.line,
                            it->second.col);
        m.set(i - 1, j - 1, e);
      }
    if (sc.sig_p < 0)
      throw ParseError(line_no, 1,
                       "metric present but no 'signature = p,q' declared");
    if (sc.sig_p + sc.sig_q != sc.dim)
      throw ParseError(line_no, 1, "signature does not sum to dim");
    sc.metric_table = m;
  }

  if (!gamma_raw.empty()) {
    std::vector<Expr> t(static_cast<size_t>(sc.dim) * sc.dim * sc.dim,
                        konst(0.0));
    for (const auto& [key, entry] : gamma_raw) {
      auto idx = parse_indices(key, "gamma", 3, entry.line);
      Expr e = parse_expr(entry.value, sc.dim, entry.line, entry.col);
      t[((idx[0] - 1) * sc.dim + (idx[1] - 1)) * sc.dim + (idx[2] - 1)] = e;
    }
    sc.gamma_table = std::move(t);
  }

  if (!chart_map_raw.empty()) {
    std::vector<Expr> fwd(sc.dim);
    std::vector<bool> seen(sc.dim, false);
    for (const auto& [mu, entry] : chart_map_raw) {
      fwd[mu - 1] =
          parse_expr(entry.value, sc.dim, entry.line, entry.col);
      seen[mu - 1] = true;
    }
    for (int i = 0; i < sc.dim; ++i)
      if (!seen[i])
        throw ParseError(line_no, 1,
                         "chart map missing x" + std::to_string(i + 1) + "'");
    sc.chart_map_fwd = std::move(fwd);
  }

  for (const auto& fname : field_order) {
    MF f(sc.dim);
    for (const auto& [m, entry] : field_raw[fname])
      f.set(m, parse_expr(entry.value, sc.dim, entry.line, entry.col));
    sc.fields.push_back({fname, std::move(f)});
  }

  if (sc.suites.empty())
    throw ParseError(line_no, 1, "no suites selected ([suites] is required)");

  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(0, 0, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Scenario sc = parse_scenario(buf.str());
  if (sc.name == "scenario") {
    size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = base.find_last_of('.');
    sc.name = dot == std::string::npos ? base : base.substr(0, dot);
  }
  return sc;
}

}  // namespace mvx
