#ifndef QCOG_DATASET_HPP
#define QCOG_DATASET_HPP

#include <iosfwd>
#include <span>
#include <string>

#include "qcog/types.hpp"

namespace qcog {

/// Converts one question's 7-point-scale column to a membership weight:
/// positive scores count as membership 1, negative as 0, zero as 0.5;
/// the weight is the mean indicator.
double likert_to_weight(std::span<const int> column);

/// Reads a dataset in the canonical tabular format:
///   exemplar,muA,muB,muAp,muBp,muAB,muABp,muApB,muApBp
/// Header row is required. Errors name the offending row and field.
ConceptPairDataset load_dataset(std::istream& in, std::string pair_label = "");
ConceptPairDataset load_dataset_file(const std::string& path,
                                     std::string pair_label = "");

/// Writes the dataset in the same schema; numbers are printed in
/// shortest round-trip form so load_dataset(serialize(d)) == d.
void serialize(const ConceptPairDataset& dataset, std::ostream& out);
std::string serialize(const ConceptPairDataset& dataset);

/// Reads a long-form panel `subject,question,score` (header required).
LikertResponseMatrix load_likert(std::istream& in);
LikertResponseMatrix load_likert_file(const std::string& path);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double x);

}  // namespace qcog

#endif  // QCOG_DATASET_HPP
