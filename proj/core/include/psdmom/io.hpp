#ifndef PSDMOM_IO_HPP
#define PSDMOM_IO_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psdmom/driver.hpp"
#include "psdmom/moments.hpp"

namespace psdmom {

using OperatorVariant =
    std::variant<TensorSumOperator, MpoRingOperator, DenseOperator, SpectralOperator>;

// Operator file: UTF-8 JSON with a "type" discriminator; a matrix is a list
// of rows of [re, im] pairs.
//   {"type":"tensor_sum","n":N,"d":D,"sites":[[matrix,...],...]}
//   {"type":"mpo_ring","n":N,"d":D,"blocks":[[matrix,...],...]}
//   {"type":"dense","matrix":M}
//   {"type":"spectrum","eigenvalues":[...]}
OperatorVariant parse_operator_json(const std::string& text);
OperatorVariant read_operator_file(const std::string& path);
std::string engine_name(const OperatorVariant& op);
std::optional<double> operator_size(const OperatorVariant& op);
MomentVector compute_moments(const OperatorVariant& op, int max_order,
                             const MomentOptions& options = {});

// Moment file: {"m":M, "values":[mu_1..mu_M], "scale":C, "size":S?}
struct MomentFile {
  MomentVector mv;
  std::optional<double> size;
};
MomentFile parse_moment_json(const std::string& text);
MomentFile read_moment_file(const std::string& path);
std::string moment_file_to_json(const MomentVector& mv,
                                std::optional<double> size);

// A bare JSON array of matrices, or {"matrices":[...]}; used for the
// spectrahedron tuple inputs.
std::vector<HermitianMatrix> parse_matrix_list_json(const std::string& text);
std::vector<HermitianMatrix> read_matrix_list_file(const std::string& path);

// Report serialization with stable key order; byte-identical for identical
// inputs when the wall-time field is excluded.
std::string report_to_json(const BoundsReport& report,
                           bool include_wall_time = true);
std::string bench_result_to_json(const BenchResult& result);
std::string plot_rows_to_csv(const std::vector<PlotRow>& rows);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace psdmom

#endif
