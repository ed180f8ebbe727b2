#include "sae/spectrum.hpp"

#include "sae/errors.hpp"
#include "sae/helium_table_data.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace sae {

std::string_view to_string(CorePolicy p) {
  return p == CorePolicy::ionic_core ? "ionic_core" : "sae_orbital";
}

char orbital_letter(int l) {
  static constexpr std::string_view letters = "spdfghiklmnoqrtuv";
  if (l < 0 || std::size_t(l) >= letters.size())
    throw DomainError("orbital_letter: l out of range");
  return letters[std::size_t(l)];
}

std::string configuration_label(int n, int l) {
  return "1s" + std::to_string(n) + orbital_letter(l);
}

std::vector<TwoElectronLevel> combine(std::span<const Eigensolution> channels,
                                      CorePolicy policy) {
  if (channels.empty())
    throw IncompleteInputError("combine: no channel solutions");
  std::map<int, const Eigensolution *> by_l;
  for (const auto &c : channels) {
    if (!by_l.emplace(c.channel.l, &c).second)
      throw IncompleteInputError("combine: duplicate channel l=" +
                                 std::to_string(c.channel.l));
    if (c.energies.empty())
      throw IncompleteInputError("combine: channel l=" +
                                 std::to_string(c.channel.l) + " has no states");
  }
  const int lmax = by_l.rbegin()->first;
  for (int l = 0; l <= lmax; ++l)
    if (!by_l.count(l))
      throw IncompleteInputError("combine: missing channel l=" +
                                 std::to_string(l));

  const auto &s_channel = *by_l.at(0);
  const PotentialModel &model = s_channel.channel.model;
  for (const auto &[l, c] : by_l) {
    const auto &m = c->channel.model;
    if (m.kind != model.kind || m.Z != model.Z ||
        (m.kind == PotentialKind::sae_h2 && m.alpha != model.alpha))
      throw IncompleteInputError("combine: channels mix different models");
  }

  const double e1s = s_channel.energies.front();
  const double core =
      policy == CorePolicy::ionic_core ? -0.5 * model.Z * model.Z : e1s;

  std::vector<TwoElectronLevel> out;
  for (const auto &[l, c] : by_l) {
    for (std::size_t s = 0; s < c->energies.size(); ++s) {
      TwoElectronLevel lev;
      lev.model = std::string(to_string(model.kind));
      lev.Z = model.Z;
      if (model.kind == PotentialKind::sae_h2)
        lev.alpha = model.alpha;
      lev.l = l;
      lev.n = c->principal(s);
      lev.epsilon = c->energies[s];
      lev.policy = policy;
      if (l == 0 && s == 0) {
        lev.label = "1s1s";
        lev.energy = 4.0 * lev.epsilon;
      } else {
        lev.label = configuration_label(lev.n, l);
        lev.energy = core + lev.epsilon;
      }
      out.push_back(std::move(lev));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

SigFig SigFig::parse(std::string_view text, int figures) {
  SigFig f;
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    f.negative = text[i] == '-';
    ++i;
  }
  std::string all;
  std::ptrdiff_t point = -1;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '.' && point < 0)
      point = std::ptrdiff_t(all.size());
    else if (std::isdigit(static_cast<unsigned char>(ch)))
      all.push_back(ch);
    else if (std::isspace(static_cast<unsigned char>(ch)))
      break;
    else
      throw ConfigError("not a decimal literal: '" + std::string(text) + "'");
  }
  if (all.empty())
    throw ConfigError("not a decimal literal: '" + std::string(text) + "'");
  if (point < 0)
    point = std::ptrdiff_t(all.size());
  const auto first = all.find_first_not_of('0');
  if (first == std::string::npos) {
    f.negative = false;
    f.digits.assign(std::size_t(figures), '0');
    return f;
  }
  f.exponent = int(point - std::ptrdiff_t(first) - 1);
  f.digits = all.substr(first, std::size_t(figures));
  f.digits.resize(std::size_t(figures), '0');
  return f;
}

SigFig SigFig::truncate(double x, int figures) {
  // glibc prints the exact binary value, so cutting digits truncates
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.60e", x);
  const std::string s(buf);
  const auto e = s.find('e');
  SigFig f;
  std::size_t i = 0;
  if (s[0] == '-') {
    f.negative = true;
    i = 1;
  }
  std::string digits;
  for (; i < e; ++i)
    if (std::isdigit(static_cast<unsigned char>(s[i])))
      digits.push_back(s[i]);
  f.exponent = std::atoi(s.c_str() + e + 1);
  if (digits.find_first_not_of('0') == std::string::npos) {
    f.negative = false;
    f.exponent = 0;
  }
  f.digits = digits.substr(0, std::size_t(figures));
  return f;
}

std::string SigFig::str() const {
  std::string out = negative ? "-" : "";
  const int nd = int(digits.size());
  if (exponent >= 0) {
    std::string d = digits;
    if (exponent + 1 > nd)
      d.append(std::size_t(exponent + 1 - nd), '0');
    out += d.substr(0, std::size_t(exponent + 1));
    if (exponent + 1 < nd)
      out += "." + d.substr(std::size_t(exponent + 1));
  } else {
    out += "0." + std::string(std::size_t(-exponent - 1), '0') + digits;
  }
  return out;
}

double SigFig::value() const { return std::strtod(str().c_str(), nullptr); }

double SigFig::unit() const {
  return std::pow(10.0, exponent - int(digits.size()) + 1);
}

// ---------------------------------------------------------------------------

std::string_view to_string(TableColumn c) {
  switch (c) {
  case TableColumn::h1:
    return "H1";
  case TableColumn::h2:
    return "H2";
  case TableColumn::ref:
    return "Ref";
  }
  return "?";
}

std::optional<std::string> ReferenceRow::cell(TableColumn c) const {
  switch (c) {
  case TableColumn::h1:
    return h1;
  case TableColumn::h2:
    return h2;
  case TableColumn::ref:
    return ref;
  }
  return std::nullopt;
}

ReferenceTable ReferenceTable::parse(std::string_view text) {
  ReferenceTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    ReferenceRow row;
    std::string ref;
    if (!(ls >> row.l))
      continue; // blank or comment
    if (!(ls >> row.n >> row.h1 >> row.h2 >> ref))
      throw ConfigError("reference table: malformed line " +
                        std::to_string(lineno));
    if (ref != "-")
      row.ref = ref;
    // validates the literals
    (void)SigFig::parse(row.h1);
    (void)SigFig::parse(row.h2);
    if (row.ref)
      (void)SigFig::parse(*row.ref);
    t.rows_.push_back(std::move(row));
  }
  return t;
}

std::string_view ReferenceTable::embedded_text() { return detail::helium_table_text; }

const ReferenceTable &ReferenceTable::embedded() {
  static const ReferenceTable table = parse(detail::helium_table_text);
  return table;
}

const ReferenceRow *ReferenceTable::find(int l, int n) const {
  for (const auto &r : rows_)
    if (r.l == l && r.n == n)
      return &r;
  return nullptr;
}

ReferenceTable ReferenceTable::filtered(std::span<const int> ls) const {
  ReferenceTable t;
  for (const auto &r : rows_)
    if (std::find(ls.begin(), ls.end(), r.l) != ls.end())
      t.rows_.push_back(r);
  return t;
}

std::string_view to_string(RowStatus s) {
  switch (s) {
  case RowStatus::match:
    return "match";
  case RowStatus::borderline:
    return "borderline";
  case RowStatus::mismatch:
    return "MISMATCH";
  }
  return "?";
}

DiffReport compare_reference(std::span<const TwoElectronLevel> levels,
                             const ReferenceTable &table, TableColumn column,
                             double borderline_tol) {
  std::vector<std::string> orphans;
  for (const auto &lev : levels)
    if (!table.find(lev.l, lev.n))
      orphans.push_back("level " + lev.label + " (l=" + std::to_string(lev.l) +
                        ", n=" + std::to_string(lev.n) + ") has no table row");
  for (const auto &row : table.rows()) {
    const bool found = std::any_of(levels.begin(), levels.end(), [&](auto &v) {
      return v.l == row.l && v.n == row.n;
    });
    if (!found)
      orphans.push_back("table row l=" + std::to_string(row.l) +
                        ", n=" + std::to_string(row.n) + " has no level");
  }
  if (!orphans.empty())
    throw AlignmentError("compare_reference: levels and table do not align (" +
                             std::to_string(orphans.size()) + " orphans)",
                         orphans);

  DiffReport rep;
  rep.column = column;
  for (const auto &lev : levels) {
    const auto cell = table.find(lev.l, lev.n)->cell(column);
    if (!cell)
      continue;
    const SigFig printed = SigFig::parse(*cell);
    const SigFig trunc = SigFig::truncate(lev.energy);
    DiffRow row;
    row.l = lev.l;
    row.n = lev.n;
    row.label = lev.label;
    row.computed = lev.energy;
    row.truncated = trunc.str();
    row.table = *cell;
    row.delta = lev.energy - printed.value();
    if (trunc == printed) {
      row.status = RowStatus::match;
    } else {
      // distance from the computed value to the truncation cell of `printed`
      const double lo = std::abs(printed.value());
      const double hi = lo + printed.unit();
      const double mag = std::abs(lev.energy);
      const bool same_sign = (lev.energy < 0.0) == printed.negative;
      const double dist = mag < lo ? lo - mag : (mag >= hi ? mag - hi : 0.0);
      row.status = (same_sign && dist <= borderline_tol) ? RowStatus::borderline
                                                         : RowStatus::mismatch;
    }
    switch (row.status) {
    case RowStatus::match:
      ++rep.matched;
      break;
    case RowStatus::borderline:
      ++rep.borderline;
      break;
    case RowStatus::mismatch:
      ++rep.mismatched;
      break;
    }
    rep.max_abs_delta = std::max(rep.max_abs_delta, std::abs(row.delta));
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

void attach_reference(std::vector<TwoElectronLevel> &levels,
                      const ReferenceTable &table) {
  for (auto &lev : levels) {
    lev.ref.reset();
    lev.delta.reset();
    if (lev.Z != 2.0)
      continue;
    const auto *row = table.find(lev.l, lev.n);
    if (row && row->ref) {
      lev.ref = SigFig::parse(*row->ref).value();
      lev.delta = lev.energy - *lev.ref;
    }
  }
}

// ---------------------------------------------------------------------------

OutputFormat output_format_from_string(std::string_view s) {
  if (s == "csv")
    return OutputFormat::csv;
  if (s == "json")
    return OutputFormat::json;
  throw ConfigError("unknown output format '" + std::string(s) +
                    "' (expected csv or json)");
}

namespace {

std::string num12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) { return std::strtod(num12(x).c_str(), nullptr); }

std::string opt12(const std::optional<double> &x) {
  return x ? num12(*x) : std::string();
}

} // namespace

std::string to_csv(std::span<const TwoElectronLevel> levels) {
  std::string out = "model,Z,alpha,l,n,label,epsilon,energy,ref,delta\n";
  for (const auto &v : levels) {
    out += v.model + ',' + num12(v.Z) + ',' + opt12(v.alpha) + ',' +
           std::to_string(v.l) + ',' + std::to_string(v.n) + ',' + v.label +
           ',' + num12(v.epsilon) + ',' + num12(v.energy) + ',' +
           opt12(v.ref) + ',' + opt12(v.delta) + '\n';
  }
  return out;
}

std::string to_json(std::span<const TwoElectronLevel> levels) {
  using nlohmann::json;
  json arr = json::array();
  auto opt = [](const std::optional<double> &x) -> json {
    return x ? json(round12(*x)) : json(nullptr);
  };
  for (const auto &v : levels) {
    json o = json::object();
    o["model"] = v.model;
    o["Z"] = round12(v.Z);
    o["alpha"] = opt(v.alpha);
    o["l"] = v.l;
    o["n"] = v.n;
    o["label"] = v.label;
    o["epsilon"] = round12(v.epsilon);
    o["energy"] = round12(v.energy);
    o["ref"] = opt(v.ref);
    o["delta"] = opt(v.delta);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::vector<TwoElectronLevel> levels_from_json(std::string_view text) {
  using nlohmann::json;
  const json arr = json::parse(text);
  if (!arr.is_array())
    throw ConfigError("levels JSON: expected an array");
  auto opt = [](const json &j) -> std::optional<double> {
    if (j.is_null())
      return std::nullopt;
    return j.get<double>();
  };
  std::vector<TwoElectronLevel> out;
  for (const auto &o : arr) {
    TwoElectronLevel v;
    v.model = o.at("model").get<std::string>();
    v.Z = o.at("Z").get<double>();
    v.alpha = opt(o.at("alpha"));
    v.l = o.at("l").get<int>();
    v.n = o.at("n").get<int>();
    v.label = o.at("label").get<std::string>();
    v.epsilon = o.at("epsilon").get<double>();
    v.energy = o.at("energy").get<double>();
    v.ref = opt(o.at("ref"));
    v.delta = opt(o.at("delta"));
    out.push_back(std::move(v));
  }
  return out;
}

void write_text(const std::string &text, const std::string &path,
                std::ostream &out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    if (!out)
      throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f)
    throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f)
    throw IoError("failed writing '" + path + "'");
}

void emit(std::span<const TwoElectronLevel> levels, OutputFormat format,
          const std::string &path, std::ostream &out) {
  write_text(format == OutputFormat::csv ? to_csv(levels) : to_json(levels),
             path, out);
}

} // namespace sae
