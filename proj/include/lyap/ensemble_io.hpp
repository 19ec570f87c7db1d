#ifndef LYAP_ENSEMBLE_IO_HPP
#define LYAP_ENSEMBLE_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "lyap/markov.hpp"

namespace lyap {

/// Ensemble file format (JSON):
///
///   {
///     "dimension": 2,
///     "matrices": [[[2, 1], [1, 1]], [[1, 1], [1, 2]]],
///     "transition": [[0.6, 0.4], [0.3, 0.7]],
///     "initial": [0.5, 0.5]
///   }
///
/// "initial" is optional and defaults to uniform. Structural problems throw
/// Error(ParseError) naming the line or field; a well-formed file that
/// violates the model invariants throws ValidationError with every issue.
MatrixEnsemble parse_ensemble(std::string_view text);

MatrixEnsemble load_ensemble(const std::filesystem::path& path);

/// Serializes with 17 significant digits so that parse_ensemble reproduces
/// double-valued entries exactly.
std::string emit_ensemble(const MatrixEnsemble& e);

} // namespace lyap

#endif
