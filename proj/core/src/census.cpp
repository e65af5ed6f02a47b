#include "topvol/census.hpp"

#include "topvol/error.hpp"
#include "topvol/lens.hpp"

#include <openssl/evp.h>

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <regex>
#include <sstream>

namespace topvol {

namespace {

constexpr std::array<const char*, 4> kTableFiles = {"table1.tsv", "table2.tsv", "table3.tsv", "table4.tsv"};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw ChecksumError("SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

// Parses "<hex>  <file>" lines in the format written by sha256sum.
std::map<std::string, std::string> read_digests(const std::filesystem::path& directory) {
  const std::filesystem::path path = directory / "SHA256SUMS";
  std::ifstream in(path);
  if (!in) throw ChecksumError("missing digest file " + path.string());
  std::map<std::string, std::string> digests;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string hex, file;
    fields >> hex >> file;
    if (!file.empty() && file.front() == '*') file.erase(0, 1);
    if (hex.size() != 64 || file.empty()) throw ChecksumError("malformed line in " + path.string() + ": " + line);
    digests[file] = hex;
  }
  return digests;
}

void verify_digests(const std::filesystem::path& directory) {
  const auto digests = read_digests(directory);
  for (const char* file : kTableFiles) {
    const auto it = digests.find(file);
    if (it == digests.end()) throw ChecksumError(std::string("SHA256SUMS has no entry for ") + file);
    const std::string actual = sha256_hex(read_file(directory / file));
    if (actual != it->second) {
      throw ChecksumError(std::string(file) + " does not match its recorded SHA-256 digest (expected " +
                          it->second + ", found " + actual + ")");
    }
  }
}

struct Row {
  std::size_t line;
  std::vector<std::string> cells;
};

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    cells.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cells;
}

std::vector<Row> read_table(const std::filesystem::path& path, const std::vector<std::string>& header) {
  const std::string file = path.filename().string();
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t number = 0;
  std::vector<Row> rows;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_tabs(line);
    if (!seen_header) {
      if (cells != header) throw FormatError(file, number, "unexpected header");
      seen_header = true;
      continue;
    }
    if (cells.size() != header.size()) {
      throw FormatError(file, number,
                        "expected " + std::to_string(header.size()) + " columns, found " + std::to_string(cells.size()));
    }
    rows.push_back(Row{number, std::move(cells)});
  }
  if (!seen_header) throw FormatError(file, number, "file is empty");
  if (rows.empty()) throw FormatError(file, number, "table has no rows");
  return rows;
}

template <typename F>
auto in_row(const std::string& file, std::size_t line, F&& parse) {
  try {
    return parse();
  } catch (const DomainError& e) {
    throw FormatError(file, line, e.what());
  }
}

std::optional<Slope> optional_slope(const std::string& cell, std::string_view parent) {
  if (cell == "none") return std::nullopt;
  const Realisation r = Realisation::parse(cell);
  if (r.parent != parent) throw DomainError("expected a filling of " + std::string(parent) + ", found " + cell);
  return r.slope;
}

const std::regex& lens_pattern() {
  static const std::regex pattern(R"(L\((\d+),(-?\d+)\))");
  return pattern;
}

std::optional<LensClass> as_lens(const std::string& key) {
  std::smatch m;
  if (!std::regex_match(key, m, lens_pattern())) return std::nullopt;
  try {
    return LensClass(std::stoll(m[1]), std::stoll(m[2]));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string normalise_query(std::string_view name) {
  std::string key = name_key(name);
  for (const auto& [from, to] : std::array<std::pair<std::string_view, std::string_view>, 3>{
           {{"S^3", "S3"}, {"\\times", "x"}, {"\\#", "#"}}}) {
    for (std::size_t pos = key.find(from); pos != std::string::npos; pos = key.find(from, pos)) {
      key.replace(pos, from.size(), to);
      pos += to.size();
    }
  }
  return key;
}

void check_well_formed(std::string_view name, const std::string& key) {
  if (key.empty()) throw MalformedNameError("empty manifold name");
  std::string open;
  bool balanced = true;
  for (char c : key) {
    if (c == '(' || c == '[') open.push_back(c);
    if (c == ')' || c == ']') {
      const char expected = c == ')' ? '(' : '[';
      if (open.empty() || open.back() != expected) {
        balanced = false;
        break;
      }
      open.pop_back();
    }
  }
  if (!balanced || !open.empty()) throw MalformedNameError("unbalanced brackets in '" + std::string(name) + "'");
  if (key.rfind("L(", 0) == 0 && key.find('#') == std::string::npos) {
    std::smatch m;
    if (!std::regex_match(key, m, lens_pattern())) {
      throw MalformedNameError("'" + std::string(name) + "' is not of the form L(p,q)");
    }
    try {
      LensClass(std::stoll(m[1]), std::stoll(m[2]));
    } catch (const DomainError& e) {
      throw MalformedNameError("'" + std::string(name) + "': " + e.what());
    }
  }
}

std::size_t equality_class_of(const std::string& manifold) {
  const auto& classes = equality_classes();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (std::find(classes[i].begin(), classes[i].end(), manifold) != classes[i].end()) return i;
  }
  return classes.size();
}

bool in_low_volume_list(const std::string& manifold) {
  const auto& v = low_volume_manifolds();
  return std::find(v.begin(), v.end(), manifold) != v.end();
}

// Splits "12.345" into its digit string and fractional digit count.
std::pair<mpz_class, std::size_t> parse_decimal(std::string_view text) {
  static const std::regex pattern(R"(\s*(\d+)(?:\.(\d+))?\s*)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern)) {
    throw DomainError("'" + std::string(text) + "' is not a decimal number");
  }
  const std::string whole = m[1].str(), fraction = m[2].matched ? m[2].str() : std::string();
  return {mpz_class(whole + fraction, 10), fraction.size()};
}

mpz_class round_to(const mpz_class& digits, std::size_t from, std::size_t to) {
  if (from <= to) return digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, from - to);
  mpz_class result;
  const mpz_class numerator = 2 * digits + scale;
  const mpz_class denominator = 2 * scale;
  mpz_fdiv_q(result.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
  return result;
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Lens:
      return "lens";
    case Family::Sfs:
      return "sfs";
    case Family::TorusBundle:
      return "torus_bundle";
    case Family::Graph:
      return "graph";
    case Family::ConnectedSum:
      return "connected_sum";
    case Family::S3:
      return "s3";
  }
  return "?";
}

Family classify(std::string_view manifold) {
  const std::string key = name_key(manifold);
  if (key == "S3") return Family::S3;
  if (key.find('#') != std::string::npos) return Family::ConnectedSum;
  if (key.rfind("L(", 0) == 0) return Family::Lens;
  if (key.rfind("TxI", 0) == 0) return Family::TorusBundle;
  if (key.find("U_") != std::string::npos || key.find('/') != std::string::npos) return Family::Graph;
  return Family::Sfs;
}

Realisation Realisation::parse(std::string_view text) {
  static const std::regex pattern(R"(\s*([A-Za-z][A-Za-z0-9]*)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern)) {
    throw DomainError("'" + std::string(text) + "' is not a realisation such as m003(-1,1)");
  }
  return Realisation{m[1].str(), Slope::make(std::stoll(m[2].str()), std::stoll(m[3].str()))};
}

std::string Realisation::to_string() const { return parent + slope.to_string(); }

Homology Homology::parse(std::string_view text) {
  static const std::regex term(R"(\s*Z(?:_(\d+))?\s*)");
  Homology h;
  h.text = std::string(text);
  std::size_t start = 0;
  while (true) {
    const std::size_t plus = text.find('+', start);
    const std::string_view piece = text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(piece.begin(), piece.end(), m, term)) {
      throw DomainError("'" + std::string(text) + "' is not a sum of Z and Z_n terms");
    }
    if (m[1].matched) {
      const long order = std::stol(m[1].str());
      if (order <= 1) throw DomainError("torsion order must exceed 1 in '" + std::string(text) + "'");
      h.torsion.push_back(order);
    } else {
      ++h.rank;
    }
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return h;
}

std::size_t AuditReport::count(char check) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [check](const AuditFinding& f) { return f.check == check; }));
}

int compare_decimal(std::string_view a, std::string_view b) {
  auto [da, fa] = parse_decimal(a);
  auto [db, fb] = parse_decimal(b);
  const std::size_t common = std::min(fa, fb);
  const int c = cmp(round_to(da, fa, common), round_to(db, fb, common));
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

std::string name_key(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (!std::isspace(static_cast<unsigned char>(c))) key += c;
  }
  return key;
}

const std::vector<std::string>& low_volume_manifolds() {
  static const std::vector<std::string> v = {"m003", "m004", "m006", "m007", "m009", "m010", "m011",
                                             "m015", "m016", "m017", "m019", "m022", "m023", "m026"};
  return v;
}

const std::vector<std::vector<std::string>>& equality_classes() {
  static const std::vector<std::vector<std::string>> classes = {
      {"m003", "m004"}, {"m006", "m007"}, {"m009", "m010"}, {"m011"},
      {"m015", "m016", "m017"}, {"m019"}, {"m022", "m023"}, {"m026"},
  };
  return classes;
}

Census Census::load(const std::filesystem::path& directory) {
  verify_digests(directory);
  Census census;

  for (const Row& row : read_table(directory / "table1.tsv", {"manifold", "volume", "realisation1", "realisation2"})) {
    in_row("table1.tsv", row.line, [&] {
      CensusEntry entry{row.cells[0], row.cells[1], {}, classify(row.cells[0]), row.line};
      if (entry.manifold.empty()) throw DomainError("empty manifold name");
      parse_decimal(entry.volume);
      if (compare_decimal(entry.volume, "0") <= 0) throw DomainError("volume must be positive");
      for (std::size_t i = 2; i < 4; ++i) {
        if (!row.cells[i].empty()) entry.realisations.push_back(Realisation::parse(row.cells[i]));
      }
      if (entry.realisations.empty()) throw DomainError("row has no realisation");
      const std::string key = name_key(entry.manifold);
      for (const CensusEntry& other : census.table1_) {
        if (name_key(other.manifold) == key) {
          throw DomainError("duplicate manifold '" + entry.manifold + "' (first on row " + std::to_string(other.row) + ")");
        }
      }
      census.table1_.push_back(std::move(entry));
      return 0;
    });
  }

  for (const Row& row : read_table(directory / "table2.tsv", {"child", "m129_slope", "m125_slope_a", "m125_slope_b"})) {
    in_row("table2.tsv", row.line, [&] {
      ParenthoodRow p{row.cells[0], optional_slope(row.cells[1], "m129"), std::nullopt};
      const auto a = optional_slope(row.cells[2], "m125");
      const auto b = optional_slope(row.cells[3], "m125");
      if (a.has_value() != b.has_value()) throw DomainError("m125 fillings come in pairs");
      if (a) p.via_m125 = std::pair(*a, *b);
      if (!p.via_m129 && !p.via_m125) throw DomainError("row has neither an m129 nor an m125 filling");
      census.table2_.push_back(std::move(p));
      return 0;
    });
  }

  for (const Row& row : read_table(directory / "table3.tsv", {"knot", "ambient", "realisation"})) {
    in_row("table3.tsv", row.line, [&] {
      census.table3_.push_back(
          KnotRecord{row.cells[0], row.cells[1], Realisation::parse(row.cells[2]), {}, {}, {}, {}});
      return 0;
    });
  }

  for (const Row& row : read_table(directory / "table4.tsv", {"ambient", "ambient_homology", "minimiser",
                                                              "minimiser_homology", "knot", "knot_homology"})) {
    in_row("table4.tsv", row.line, [&] {
      census.table4_.push_back(HomologyRow{row.cells[0], Homology::parse(row.cells[1]), row.cells[2],
                                           Homology::parse(row.cells[3]), row.cells[4], Homology::parse(row.cells[5])});
      return 0;
    });
  }

  for (KnotRecord& k : census.table3_) {
    for (const HomologyRow& h : census.table4_) {
      if (name_key(h.ambient) == name_key(k.ambient) && h.knot == k.knot) {
        k.knot_homology = h.knot_homology;
        k.ambient_homology = h.ambient_homology;
        k.minimiser = h.minimiser;
        k.minimiser_homology = h.minimiser_homology;
      }
    }
  }
  return census;
}

const CensusEntry& Census::lookup(std::string_view name) const {
  const std::string key = normalise_query(name);
  // Verbatim table names win, including the two stored with a stray ']'.
  for (const CensusEntry& e : table1_) {
    if (!key.empty() && name_key(e.manifold) == key) return e;
  }
  check_well_formed(name, key);
  if (const auto lens = as_lens(key)) {
    for (const CensusEntry& e : table1_) {
      if (const auto other = as_lens(name_key(e.manifold)); other && *other == *lens) return e;
    }
  }
  throw NotFoundError("'" + std::string(name) +
                      "' is not in the census: its topological volume is at least 3.07 or it is hyperbolic");
}

std::vector<CensusEntry> Census::manifolds_at_volume(std::string_view volume) const {
  parse_decimal(volume);
  std::vector<CensusEntry> out;
  for (const CensusEntry& e : table1_) {
    if (compare_decimal(e.volume, volume) == 0) out.push_back(e);
  }
  return out;
}

std::vector<std::string> Census::volume_blocks() const {
  std::vector<std::string> blocks;
  for (const CensusEntry& e : table1_) {
    const bool known = std::any_of(blocks.begin(), blocks.end(),
                                   [&](const std::string& v) { return compare_decimal(v, e.volume) == 0; });
    if (!known) blocks.push_back(e.volume);
  }
  return blocks;
}

const ParenthoodRow& Census::parenthood(std::string_view child) const {
  const std::string key = name_key(child);
  if (!in_low_volume_list(key)) {
    throw NotFoundError("'" + std::string(child) + "' is not one of the 14 cusped manifolds of volume at most 3.07");
  }
  for (const ParenthoodRow& row : table2_) {
    if (row.child == key) return row;
  }
  throw NotFoundError("no parenthood row for '" + key + "'");
}

std::vector<KnotRecord> Census::second_minimisers(std::string_view ambient) const {
  const std::string key = normalise_query(ambient);
  std::vector<KnotRecord> out;
  for (const KnotRecord& k : table3_) {
    if (name_key(k.ambient) == key) out.push_back(k);
  }
  return out;
}

std::optional<std::string> Census::cusped_volume(std::string_view manifold) const {
  const std::string key = name_key(manifold);
  for (const CensusEntry& e : table1_) {
    for (const Realisation& r : e.realisations) {
      if (r.parent == key) return e.volume;
    }
  }
  return std::nullopt;
}

AuditReport Census::audit() const {
  AuditReport report;
  const auto add = [&](char check, std::string message) { report.findings.push_back({check, std::move(message)}); };

  for (const CensusEntry& e : table1_) {
    for (const Realisation& r : e.realisations) {
      if (!in_low_volume_list(r.parent)) {
        add('a', "table1 row " + std::to_string(e.row) + ": parent " + r.parent + " of " + e.manifold +
                     " is not a low-volume cusped manifold");
      }
    }
  }
  for (const ParenthoodRow& p : table2_) {
    if (!in_low_volume_list(p.child)) add('a', "table2: child " + p.child + " is not a low-volume cusped manifold");
  }
  for (const KnotRecord& k : table3_) {
    if (k.realisation.parent != k.knot) {
      add('a', "table3: knot " + k.knot + " is realised by filling " + k.realisation.parent);
    }
    if (!in_low_volume_list(k.knot)) add('a', "table3: knot " + k.knot + " is not a low-volume cusped manifold");
  }

  const std::size_t n_classes = equality_classes().size();
  std::vector<std::vector<std::string>> class_volumes(n_classes);
  for (std::size_t i = 0; i < table1_.size(); ++i) {
    const CensusEntry& e = table1_[i];
    if (i > 0 && compare_decimal(table1_[i - 1].volume, e.volume) > 0) {
      add('b', "table1 row " + std::to_string(e.row) + ": volume " + e.volume + " is below the previous row's " +
                   table1_[i - 1].volume);
    }
    for (const Realisation& r : e.realisations) {
      const std::size_t c = equality_class_of(r.parent);
      if (c == n_classes) continue;
      auto& volumes = class_volumes[c];
      if (std::none_of(volumes.begin(), volumes.end(),
                       [&](const std::string& v) { return compare_decimal(v, e.volume) == 0; })) {
        volumes.push_back(e.volume);
      }
    }
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (class_volumes[c].size() > 1) {
      std::string names, volumes;
      for (const auto& m : equality_classes()[c]) names += (names.empty() ? "" : "=") + m;
      for (const auto& v : class_volumes[c]) volumes += (volumes.empty() ? "" : ", ") + v;
      add('b', "parents " + names + " have equal volume but realise rows of volumes " + volumes);
    }
  }
  for (const std::string& block : volume_blocks()) {
    std::vector<std::size_t> seen;
    for (const CensusEntry& e : table1_) {
      if (compare_decimal(e.volume, block) != 0) continue;
      for (const Realisation& r : e.realisations) {
        const std::size_t c = equality_class_of(r.parent);
        if (c != n_classes && std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
      }
    }
    if (seen.size() > 1) add('b', "volume block " + block + " mixes parents of different volumes");
  }

  for (const KnotRecord& k : table3_) {
    const CensusEntry* ambient = nullptr;
    try {
      ambient = &lookup(k.ambient);
    } catch (const Error&) {
      continue;
    }
    const auto knot_volume = cusped_volume(k.knot);
    if (!knot_volume) {
      add('c', "table3: knot " + k.knot + " has no census volume");
      continue;
    }
    if (compare_decimal(*knot_volume, ambient->volume) < 0) {
      add('c', "table3: knot " + k.knot + " in " + k.ambient + " has volume " + *knot_volume +
                   ", below the minimiser volume " + ambient->volume);
    }
  }
  return report;
}

}  // namespace topvol
