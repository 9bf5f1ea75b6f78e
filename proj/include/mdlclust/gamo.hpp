#pragma once

#include "mdlclust/consensus.hpp"
#include "mdlclust/objectives.hpp"
#include "mdlclust/types.hpp"

namespace mdlclust {

// The three refinement stages. ab_mdl descends the weighted description
// length visiting samples with their displacement probability, ep_mdl
// descends it visiting every sample, ep_af ascends the agreement fitness
// visiting every sample.
enum class Stage { ab_mdl, ep_mdl, ep_af };

Stage stage_from_string(const std::string& name);
std::string to_string(Stage stage);

struct GamoParams {
  int max_outer_iters = 100;  // cap on sweeps per stage
  int patience = 10;          // stop after this many sweeps without an accepted move
  std::vector<Stage> stage_order = {Stage::ab_mdl, Stage::ep_mdl, Stage::ep_af};
  std::uint64_t seed = 0;
};

struct StageTrace {
  Stage stage;
  std::vector<double> objective;    // objective value after each sweep
  std::vector<int> moves_accepted;  // accepted moves per sweep
  Labeling final;
};

// Each stage sweeps the samples in a fresh random order, greedily reassigning
// a visited sample to the cluster giving the best strict objective
// improvement (ties to the lowest id). A sample alone in its cluster is never
// moved, so k stays constant. A stage stops after `patience` consecutive
// sweeps without an accepted move, or after max_outer_iters sweeps.

// Description-length descent gated by displacement probabilities, which are
// recomputed from the current labeling at the start of every sweep.
StageTrace abmdlgao(const Labeling& c0, const Eigen::Ref<const Eigen::MatrixXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& w,
                    const AgreementMatrix& a, const GamoParams& params = {});

// Description-length descent over every sample (no gating).
StageTrace epmdlgao(const Labeling& c0, const Eigen::Ref<const Eigen::MatrixXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& w,
                    const GamoParams& params = {});

// Agreement-fitness ascent over every sample.
StageTrace epafgao(const Labeling& c0, const AgreementMatrix& a,
                   const GamoParams& params = {});

struct GamoResult {
  std::vector<StageTrace> stages;
  Labeling final;
};

// Runs the stages of params.stage_order in sequence, feeding each stage the
// previous stage's result. Per-stage seeds are derived from params.seed.
GamoResult gamo_pipeline(const Labeling& c0, const Eigen::Ref<const Eigen::MatrixXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& w,
                         const AgreementMatrix& a, const GamoParams& params = {});

}  // namespace mdlclust
