#ifndef PSEP_MODELS_HPP
#define PSEP_MODELS_HPP

#include "psep/expr.hpp"
#include "psep/structure.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace psep {

// ---------------------------------------------------------------------------
// Built-in model zoo
// ---------------------------------------------------------------------------

/// J^ij = a^ij x_i x_j on (0,inf)^n for a caller-supplied skew A. The cyclic
/// 3x3 matrix ships as the named default preset.
SeparableStructure lotka_volterra(CoefficientMatrix A);
CoefficientMatrix cyclic_lv_matrix();

/// Toda lattice in Flaschka variables (alpha_1..alpha_{N-1}, beta_1..beta_N):
/// charts x on the alphas, 1 on the betas, A = [[0, M], [-M^T, 0]] with the
/// bidiagonal (-1, 1) matrix M.
SeparableStructure toda(int N);

/// Relativistic Toda: same variable ordering, every chart is x.
SeparableStructure relativistic_toda(int N);

/// A = [[0,-r,0],[r,0,-a],[0,a,0]], charts (x, x, 1).
SeparableStructure kermack_mckendric(const Rational& r, const Rational& a);

/// Charts x^2, A = [[0,0,-1],[0,0,-1],[1,1,0]].
SeparableStructure circle_map();

/// Charts x(1-x) on (0,1)^2, A the 2x2 symplectic matrix.
SeparableStructure two_by_two_game();

struct ZooEntry {
    std::string name;
    std::string parameters; // short help text
    std::string description;
};

const std::vector<ZooEntry>& zoo();

/// Builds a zoo model from string parameters (e.g. {"N","3"} or
/// {"r","1"},{"a","1"}). Unknown names or parameters raise ValidationError.
SeparableStructure instantiate(const std::string& name,
                               const std::map<std::string, std::string>& params);

// ---------------------------------------------------------------------------
// Model files (JSON)
// ---------------------------------------------------------------------------

struct LoadedModel {
    SeparableStructure structure;
    std::optional<ExprPtr> hamiltonian;
    std::string hamiltonian_source;
    std::string name;
};

/// Generic candidate field, verified by finite differences only.
struct LoadedField {
    MatrixField field;
    DomainBox domain;
    std::string name;
};

using LoadedAny = std::variant<LoadedModel, LoadedField>;

/// Separable form: {"dimension", "matrix" (row-major rational strings,
/// validated skew), "charts", "domain", optional "hamiltonian", "name"}.
/// Field form: {"dimension", "field": {"i,j": "<expr>", ...}, "domain"}.
/// Intervals are open; [lo, hi] arrays may use "inf"/"-inf" sentinels, and
/// the bracket-string form "(lo,hi)" is accepted ("[lo,hi]" is rejected —
/// domains must be open).
LoadedAny load_model_file(const std::string& path);

/// Parses the same JSON from a string (used by the loader and tests).
LoadedAny parse_model_json(const std::string& text, const std::string& context);

/// Serializes a separable structure (with optional Hamiltonian source) to
/// the model-file JSON; rationals round-trip bit-exactly.
std::string serialize_model(const SeparableStructure& s, const std::string& name = "",
                            const std::string& hamiltonian_source = "");

} // namespace psep

#endif
