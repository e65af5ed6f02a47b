#pragma once

// The census of closed non-hyperbolic manifolds of topological volume below
// 3.07, with the cusped manifolds realising them, the parenthood of those
// cusped manifolds under filling m129 and m125, the non-minimising knots and
// their homology.
//
// Data lives in four tab-separated files plus a SHA256SUMS digest:
//   table1.tsv  manifold, volume, realisation1, realisation2
//   table2.tsv  child, m129_slope, m125_slope_a, m125_slope_b
//   table3.tsv  knot, ambient, realisation
//   table4.tsv  ambient, ambient_homology, minimiser, minimiser_homology,
//               knot, knot_homology
// A realisation is written "m003(-1,1)"; an absent table2.tsv entry is "none".

#include "topvol/slope.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace topvol {

enum class Family { Lens, Sfs, TorusBundle, Graph, ConnectedSum, S3 };

std::string_view to_string(Family family);
/// Classifies a manifold name by its leading notation.
Family classify(std::string_view manifold);

/// A cusped manifold and a filling slope, "m003(-1,1)".
struct Realisation {
  std::string parent;
  Slope slope;

  /// Throws DomainError on bad syntax or a non-primitive slope.
  static Realisation parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Realisation&, const Realisation&) = default;
};

/// Z^rank plus cyclic torsion, written "Z_6 + Z".
struct Homology {
  long rank = 0;
  std::vector<long> torsion;
  std::string text;

  /// Throws DomainError on bad syntax or torsion orders <= 1.
  static Homology parse(std::string_view text);
};

struct CensusEntry {
  std::string manifold;
  std::string volume;
  std::vector<Realisation> realisations;
  Family family;
  std::size_t row;
};

struct ParenthoodRow {
  std::string child;
  std::optional<Slope> via_m129;
  std::optional<std::pair<Slope, Slope>> via_m125;
};

struct KnotRecord {
  std::string knot;
  std::string ambient;
  Realisation realisation;
  /// Joined from the homology table when that table lists the pair.
  std::optional<Homology> knot_homology;
  std::optional<Homology> ambient_homology;
  std::optional<std::string> minimiser;
  std::optional<Homology> minimiser_homology;
};

struct HomologyRow {
  std::string ambient;
  Homology ambient_homology;
  std::string minimiser;
  Homology minimiser_homology;
  std::string knot;
  Homology knot_homology;
};

struct AuditFinding {
  /// 'a' parents outside the low-volume list, 'b' block/equality-class
  /// inconsistencies, 'c' non-minimising knots cheaper than the minimiser.
  char check;
  std::string message;
};

struct AuditReport {
  std::vector<AuditFinding> findings;
  bool clean() const noexcept { return findings.empty(); }
  std::size_t count(char check) const noexcept;
};

/// Compares two non-negative decimal literals after rounding the one with
/// more fractional digits (half up) to the precision of the other. Returns
/// -1, 0 or 1. Throws DomainError on malformed input.
int compare_decimal(std::string_view a, std::string_view b);

/// Strips all whitespace; names compare equal when their stripped forms do.
std::string name_key(std::string_view name);

/// The fourteen cusped manifolds of volume at most 3.07, by increasing volume.
const std::vector<std::string>& low_volume_manifolds();

/// Groups of low-volume manifolds with equal volume, by increasing volume.
const std::vector<std::vector<std::string>>& equality_classes();

class Census {
 public:
  /// Loads the four tables from `directory`, verifying SHA256SUMS first.
  /// Throws ChecksumError, NotFoundError (missing file) or FormatError.
  static Census load(const std::filesystem::path& directory);

  const std::vector<CensusEntry>& table1() const noexcept { return table1_; }
  const std::vector<ParenthoodRow>& table2() const noexcept { return table2_; }
  const std::vector<KnotRecord>& table3() const noexcept { return table3_; }
  const std::vector<HomologyRow>& table4() const noexcept { return table4_; }

  /// Exact row by name (whitespace-insensitive, "S^3" accepted for S3); a
  /// single lens space also matches any homeomorphic L(p, q). Throws
  /// MalformedNameError for names that cannot denote a manifold and
  /// NotFoundError otherwise.
  const CensusEntry& lookup(std::string_view name) const;

  /// Every table1.tsv row whose volume equals `volume` under compare_decimal.
  std::vector<CensusEntry> manifolds_at_volume(std::string_view volume) const;

  /// Distinct volume strings of table1.tsv in order of appearance.
  std::vector<std::string> volume_blocks() const;

  /// Throws NotFoundError when `child` is not a low-volume manifold.
  const ParenthoodRow& parenthood(std::string_view child) const;

  /// Non-minimising knots in `ambient`, joined with their homology data.
  std::vector<KnotRecord> second_minimisers(std::string_view ambient) const;

  /// Volume of a low-volume cusped manifold as listed in table1.tsv (the
  /// volume of any row it realises), if it realises one.
  std::optional<std::string> cusped_volume(std::string_view manifold) const;

  AuditReport audit() const;

 private:
  std::vector<CensusEntry> table1_;
  std::vector<ParenthoodRow> table2_;
  std::vector<KnotRecord> table3_;
  std::vector<HomologyRow> table4_;
};

}  // namespace topvol
