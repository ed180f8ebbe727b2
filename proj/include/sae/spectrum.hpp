#pragma once

// Two-electron 1snl energies assembled from single-orbital eigenvalues,
// the embedded helium reference table, and CSV/JSON emission.

#include "sae/radial_solver.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sae {

/*!
  How the frozen 1s electron enters excited 1snl levels.

  ionic_core uses the He+-like core energy -Z^2/2; sae_orbital uses the
  solver's own 1s eigenvalue. The 1s^2 ground level is always 4 e_1s.
*/
enum class CorePolicy { ionic_core, sae_orbital };

std::string_view to_string(CorePolicy p);

struct TwoElectronLevel {
  std::string model; //!< coulomb | meanfield | h1 | h2
  double Z = 2.0;
  std::optional<double> alpha; //!< only for h2
  int l = 0;
  int n = 1;
  std::string label; //!< "1s1s", "1s2s", "1s3d", ...
  double epsilon = 0.0; //!< orbital eigenvalue of the active electron
  double energy = 0.0;  //!< two-electron energy
  CorePolicy policy = CorePolicy::ionic_core;
  std::optional<double> ref;   //!< helium reference value, if tabulated
  std::optional<double> delta; //!< energy - ref
};

//! Spectroscopic letter for l (s p d f g h i k l m ...; j is skipped).
char orbital_letter(int l);
//! "1s1s" for the ground level, otherwise "1s<n><letter>".
std::string configuration_label(int n, int l);

//! Builds levels from channel solutions for l = 0 .. lmax (every l in that
//! range must be present exactly once, all from the same model).
//! Throws IncompleteInputError otherwise.
std::vector<TwoElectronLevel> combine(std::span<const Eigensolution> channels,
                                      CorePolicy policy = CorePolicy::ionic_core);

//! A value printed with a fixed number of significant figures, kept as
//! digits so that no binary rounding enters comparisons.
struct SigFig {
  bool negative = false;
  std::string digits; //!< exactly `figures` digits, first non-zero
  int exponent = 0;   //!< value = d.dddd * 10^exponent

  //! Parses a decimal literal such as "-2.00500".
  static SigFig parse(std::string_view text, int figures = 6);
  //! Truncates toward zero at `figures` significant figures using the
  //! exact decimal expansion of x.
  static SigFig truncate(double x, int figures = 6);

  double value() const;
  //! Size of one unit in the last kept digit.
  double unit() const;
  std::string str() const;
  bool operator==(const SigFig &) const = default;
};

enum class TableColumn { h1, h2, ref };
std::string_view to_string(TableColumn c);

struct ReferenceRow {
  int l = 0;
  int n = 1;
  std::string h1;
  std::string h2;
  std::optional<std::string> ref; //!< absent for blank cells

  std::optional<std::string> cell(TableColumn c) const;
};

//! The helium 1snl table: 8 blocks (l = 0..7) of 5 rows each.
class ReferenceTable {
public:
  //! Parses the plain-text fixture format ('#' comments; columns
  //! l n H1 H2 ref, '-' for a blank cell).
  static ReferenceTable parse(std::string_view text);
  //! The fixture compiled into the library.
  static const ReferenceTable &embedded();
  //! Raw text of the embedded fixture.
  static std::string_view embedded_text();

  std::span<const ReferenceRow> rows() const { return rows_; }
  const ReferenceRow *find(int l, int n) const;
  //! Keeps only rows whose l is listed.
  ReferenceTable filtered(std::span<const int> ls) const;

private:
  std::vector<ReferenceRow> rows_;
};

enum class RowStatus { match, borderline, mismatch };
std::string_view to_string(RowStatus s);

struct DiffRow {
  int l = 0;
  int n = 1;
  std::string label;
  double computed = 0.0;
  std::string truncated; //!< computed, truncated to 6 s.f.
  std::string table;
  double delta = 0.0; //!< computed - table value
  RowStatus status = RowStatus::mismatch;
};

struct DiffReport {
  TableColumn column = TableColumn::h2;
  std::vector<DiffRow> rows;
  int matched = 0;
  int borderline = 0;
  int mismatched = 0;
  double max_abs_delta = 0.0;

  int total() const { return int(rows.size()); }
  //! Every row matches exactly after truncation.
  bool all_match() const { return mismatched == 0 && borderline == 0; }
  //! Every row matches or misses only through a truncation-edge effect.
  bool all_within_truncation_noise() const { return mismatched == 0; }
};

/*!
  Compares computed levels with one column of the table. A row matches when
  the computed energy truncated to 6 s.f. equals the printed value. A
  non-matching row is borderline when the computed energy lies within
  `borderline_tol` hartree of the interval of values that would truncate to
  the printed one. Blank reference cells are skipped.

  Throws AlignmentError listing levels with no table row and table rows
  with no level.
*/
DiffReport compare_reference(std::span<const TwoElectronLevel> levels,
                             const ReferenceTable &table, TableColumn column,
                             double borderline_tol = 1e-9);

//! Fills ref/delta of helium levels (Z == 2) from the table's ref column.
void attach_reference(std::vector<TwoElectronLevel> &levels,
                      const ReferenceTable &table);

enum class OutputFormat { csv, json };
OutputFormat output_format_from_string(std::string_view s);

//! Header: model,Z,alpha,l,n,label,epsilon,energy,ref,delta. Numbers carry
//! 12 significant digits; absent values are empty cells.
std::string to_csv(std::span<const TwoElectronLevel> levels);
//! Array of objects with the CSV field names; absent values are null.
std::string to_json(std::span<const TwoElectronLevel> levels);
std::vector<TwoElectronLevel> levels_from_json(std::string_view text);

//! Writes to `path`, or to `out` when path is empty or "-". Throws IoError.
void emit(std::span<const TwoElectronLevel> levels, OutputFormat format,
          const std::string &path, std::ostream &out);

//! Writes text to `path` (or `out` for "" / "-"). Throws IoError.
void write_text(const std::string &text, const std::string &path,
                std::ostream &out);

} // namespace sae
