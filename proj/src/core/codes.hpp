#ifndef MPQC_CODES_HPP
#define MPQC_CODES_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gf2.hpp"

namespace mpqc::codes {

class CodeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Parse failure in the code file format; line is 1-based.
class ParseError : public CodeError {
public:
  ParseError(std::size_t line, const std::string &msg)
      : CodeError("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// First violating index set, lexicographic over pairs then triples.
// Row indices are 0-based.
struct TriorthogonalityWitness {
  std::vector<std::size_t> rows; // 2 entries for a pair, 3 for a triple
  std::size_t overlap_weight = 0;
  std::string describe() const;
};

std::optional<TriorthogonalityWitness>
check_triorthogonal(const gf2::BitMatrix &g);

// A binary matrix whose distinct row pairs and triples all have
// even-weight entrywise products. Construct via make_triorthogonal or
// load_code so the invariant is established.
struct TriorthogonalMatrix {
  gf2::BitMatrix g;
};

TriorthogonalMatrix make_triorthogonal(gf2::BitMatrix g);

struct CssCode {
  std::size_t n = 0;
  std::size_t k = 0;
  gf2::BitMatrix x_stabilizers;
  gf2::BitMatrix z_stabilizers;
  gf2::BitMatrix logical_x; // k rows
  gf2::BitMatrix logical_z; // k rows
  TriorthogonalMatrix source;
};

// Stabilizer commutation, logical (anti)commutation and the k formula.
// Returns an explanation of the first violated invariant, if any.
std::optional<std::string> css_invariant_violation(const CssCode &code);

// CSS construction from a triorthogonal matrix: even-weight rows give
// X stabilizers, even-weight vectors of the orthogonal complement give
// Z stabilizers, the odd-weight row class gives the logical pair.
// Rejects non-triorthogonal input and any k != 1.
CssCode build_css(const TriorthogonalMatrix &g);

struct DistanceResult {
  bool exact = false;
  std::size_t value = 0; // exact distance, or the searched bound w_max
};

// Minimum weight over nontrivial logical X- and Z-type operators, by
// enumeration of all candidates of weight <= w_max. Not exact when the
// true distance exceeds w_max; the caller sees "d > w_max".
DistanceResult min_distance(const CssCode &code, std::size_t w_max);

struct CosetTripleWitness {
  int x = 0, y = 0, z = 0;             // logical classes
  std::uint64_t u = 0, v = 0, w = 0;   // codeword masks
};

struct CczCorrection {
  std::vector<std::size_t> z_qubits;
  std::vector<std::pair<std::size_t, std::size_t>> cz_pairs;
  bool empty() const { return z_qubits.empty() && cz_pairs.empty(); }
};

struct CczReport {
  bool is_exact = false;
  CczCorrection correction;
  bool correction_found = false; // meaningful when !is_exact
  std::optional<CosetTripleWitness> failing_witness;
};

// Checks that qubit-wise CCZ across three blocks of the code realizes
// logical CCZ: for every coset triple the accumulated physical phase
// (-1)^{|u.v.w|} must equal (-1)^{xyz}. On failure searches for a
// per-block diagonal correction.
CczReport check_transversal_ccz(const CssCode &code);

// Per-block diagonal correction (Z on single qubits, CZ on pairs) whose
// added phase fixes every failing coset triple; minimal support,
// lexicographic tie-break. nullopt when the system is infeasible.
std::optional<CczCorrection> ccz_correction_search(const CssCode &code);

// The 15-qubit punctured Reed-Muller generator: the all-ones row plus
// the four binary-coordinate indicator rows of positions 1..15.
TriorthogonalMatrix construct_rm15();

// Text format: first line "n m", then m rows of n characters from
// {0,1}. Lines starting with '#' are comments. Saves are byte-exact:
// LF endings, no comments, no trailing whitespace.
TriorthogonalMatrix load_code(const std::filesystem::path &path);
void save_code(const TriorthogonalMatrix &g, const std::filesystem::path &path);

TriorthogonalMatrix parse_code_text(const std::string &text);
std::string format_code_text(const TriorthogonalMatrix &g);

} // namespace mpqc::codes

#endif
