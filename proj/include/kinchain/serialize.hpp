#pragma once

#include <json.hpp>

#include "kinchain/chpca.hpp"
#include "kinchain/correspondence.hpp"
#include "kinchain/netexport.hpp"
#include "kinchain/segmentation.hpp"
#include "kinchain/synth.hpp"

namespace kinchain {

void to_json(nlohmann::json& j, const FrameRange& r);
void from_json(const nlohmann::json& j, FrameRange& r);

void to_json(nlohmann::json& j, const SegmentationResult& s);
void from_json(const nlohmann::json& j, SegmentationResult& s);

void to_json(nlohmann::json& j, const RrsReport& r);
void from_json(const nlohmann::json& j, RrsReport& r);
void to_json(nlohmann::json& j, const CorrelationReport& r);
void to_json(nlohmann::json& j, const PhaseComparisonReport& r);
void to_json(nlohmann::json& j, const PhaseNetwork& n);
void to_json(nlohmann::json& j, const PhaseField& f);

void to_json(nlohmann::json& j, const OscillatorSpec& s);
void from_json(const nlohmann::json& j, OscillatorSpec& s);

/// Per-point records {label, hodge, amplitude, re, im} of one mode.
nlohmann::json mode_to_json(const ComplexMode& mode, const Labels& labels);
ComplexMode mode_from_json(const nlohmann::json& j);

/// Eigenvalues and contributions of every mode; per-point records for the
/// first `exported_modes` modes.
nlohmann::json chpca_to_json(const ChpcaResult& result, int exported_modes = 2);
/// Inverse of chpca_to_json. Modes past the exported ones come back with
/// eigenvalue and contribution but an empty vector.
ChpcaResult chpca_from_json(const nlohmann::json& j);

nlohmann::json ensemble_to_json(const TrialEnsemble& ens, const Labels& labels);

/// Scree data rows: mode, observed, null_mean, null_sd, threshold.
std::string scree_csv(const RrsReport& rrs);

std::string to_string(TransformPlacement p);
TransformPlacement placement_from_string(const std::string& s);

}  // namespace kinchain
