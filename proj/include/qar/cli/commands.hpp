#ifndef QAR_CLI_COMMANDS_HPP
#define QAR_CLI_COMMANDS_HPP

#include <ostream>

#include "qar/cli/config.hpp"

namespace qar::cli {

/// All commands write CSV (header row, UNIX newlines, 17 significant digits)
/// to `out` and return a process exit code: 0 ok, 2 config error, 3
/// numerical error.  Configuration problems raise ConfigError and numerical
/// failures NumericalError; the binary maps them to the exit codes, while
/// in-process callers (tests, bindings) see the exceptions.

/// One steady-state evaluation of the full model (or the reduced three-level
/// model): populations summary, all currents, cold noise, entropy
/// production, COP figures and TUR ratio.
int cmd_steady(const KeyValueConfig& cfg, bool reduced, std::ostream& out);

/// 1D or 2D parameter sweep with the same columns as `steady`, one row per
/// grid point in row-major order.  Points are distributed over `workers`
/// threads; output order is deterministic.  Failed points keep their row
/// with a status tag.
int cmd_sweep(const KeyValueConfig& cfg, bool reduced, std::ostream& out);

/// Thermalization times t_th(N) for a single Ohmic bath, with a log-log
/// slope column; or, when dynamics.trajectory_n is set, the relative-entropy
/// trajectory for that system size.
int cmd_dynamics(const KeyValueConfig& cfg, std::ostream& out);

/// Reaction-coordinate mapping table: sampled densities and the closed-form
/// versus quadrature mode parameters.
int cmd_rcmap(const KeyValueConfig& cfg, std::ostream& out);

/// Reduced-model reference row: effective rates, occupations, analytic
/// current/noise against the numeric three-level solve.
int cmd_reduced(const KeyValueConfig& cfg, std::ostream& out);

} // namespace qar::cli

#endif
