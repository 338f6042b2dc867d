#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pcax/matrix.hpp"
#include "pcax/stats.hpp"

namespace pcax {

/// A dataset with one category per object. Label ids are 0..K-1 and every
/// category holds at least 2 objects.
struct LabeledData {
  DataMatrix data;
  std::vector<int> labels;
  std::vector<std::string> class_names;  // indexed by label id

  LabeledData(DataMatrix d, std::vector<int> ids,
              std::vector<std::string> names);

  std::size_t n_classes() const { return class_names.size(); }
  std::vector<std::size_t> class_counts() const;
};

struct ScatterMatrices {
  Matrix intra;
  Matrix inter;
};

/// Intra-group scatter (sum of per-class scatters around the class
/// centroids) and inter-group scatter (class-count-weighted dispersion of
/// the centroids around the global mean). Neither carries a 1/(Q-1) factor.
ScatterMatrices scatter_matrices(const LabeledData& d);

/// Fitted discriminant axes of S = S_intra^-1 S_inter, obtained through the
/// symmetrized problem L^-1 S_inter L^-T with S_intra = L L^T. Axis rows are
/// unit length with the dominant-entry sign convention; at most K-1
/// eigenvalues are nonzero.
struct LdaModel {
  std::vector<std::string> feature_names;
  std::vector<double> mean;     // global mean, used by transform
  Matrix s_intra;
  Matrix s_inter;
  Matrix axes;                  // N x N, row i = discriminant direction i
  std::vector<double> eigenvalues;
  std::size_t retained;         // eigenvalues above 1e-9 * lambda_1
  double ridge_used;            // 0 when no ridge was applied
  std::vector<std::string> class_names;

  /// Group-separation diagnostic: trace of S_intra^-1 S_inter, i.e. the sum
  /// of the generalized eigenvalues.
  double separation_score() const;
};

/// ridge semantics: a value is added as ridge * I to S_intra before
/// factorization; 0 demands a non-singular S_intra (NumericalError
/// otherwise); nullopt retries a singular S_intra once with the default
/// ridge 1e-8 * trace(S_intra) / N and records it in ridge_used.
LdaModel fit_lda(const LabeledData& d,
                 std::optional<double> ridge = std::nullopt);

/// Projects data onto the m leading discriminant axes after subtracting the
/// training-set global mean. m must be in [1, retained].
Matrix transform_lda(const LdaModel& model, const DataMatrix& x,
                     std::size_t m);

std::string lda_model_to_json(const LdaModel& model);
LdaModel lda_model_from_json(const std::string& text);

}  // namespace pcax
