#ifndef MLWB_JSON_IO_HPP
#define MLWB_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "mlwb/algebra.hpp"
#include "mlwb/frame.hpp"
#include "mlwb/proof.hpp"
#include "mlwb/semantics.hpp"

namespace mlwb {

using nlohmann::json;

// Frame documents:
//   {"worlds": 2, "modalities": ["box"],
//    "neighborhoods": {"box": [[[0,1],[1]], [[1]]]}}
// with the outer neighborhood list indexed by world and each entry a list
// of world-sets. All loaders throw FormatError on malformed input.
json frame_to_json(const NeighborhoodFrame& f);
NeighborhoodFrame frame_from_json(const json& j);

// Relation documents: {"worlds": 2, "edges": {"E": [[0,1],[1,1]]}}.
json relation_to_json(const Relation& r);
Relation relation_from_json(const json& j);

// Algebra documents: {"atoms": 2, "modalities": ["E"], "box": {"E": [0,1,2,3]}}
// where element i is the i-th subset of the atoms in binary order.
json algebra_to_json(const ModalAlgebra& a);
ModalAlgebra algebra_from_json(const json& j);

// Model documents extend the frame document with
//   {"domain": 2, "interpretation": {"P": {"arity": 1,
//      "true_at": [[0,[1]], [1,[0]]]}}}.
json model_to_json(const NeighborhoodModel& m);
NeighborhoodModel model_from_json(const json& j);

// Proof documents: {"system": "qckl-", "steps": [...]} — see README for
// the per-rule step records. base_dir resolves premise recipes given as
// "proof_files".
json proof_to_json(const Proof& p);
Proof proof_from_json(const json& j, const std::string& base_dir = ".");

// Loads a whole JSON document from disk; FormatError on IO/syntax problems.
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace mlwb

#endif
