#include "salmetrics/scoring.hpp"

#include <stdexcept>
#include <string>

#include "salmetrics/distribution_metrics.hpp"
#include "salmetrics/emd.hpp"
#include "salmetrics/rng.hpp"
#include "salmetrics/transforms.hpp"

namespace salmetrics {

GroundTruth make_ground_truth(const FixationSet& fs, int width, int height,
                              const ViewingGeometry& geom) {
    GroundTruth gt;
    gt.binary = rasterize_fixations(fs, width, height);
    gt.dist = blur_to_fixation_map(gt.binary, geom);
    return gt;
}

double score_map(MetricId metric, const Grid& P, const GroundTruth& gt, const EvalParams& params) {
    if (P.v.empty()) throw std::invalid_argument("empty prediction");
    const Grid& ref = gt.binary.grid;
    const Grid p = P.same_dims(ref) ? P : resize(P, ref.width, ref.height);

    // Substream per metric so adding one metric to a run never shifts
    // another's random draws.
    const std::uint64_t metric_seed = mix_seed(params.seed, hash_string(metric_name(metric)));

    switch (metric) {
        case MetricId::AucJudd:
            return auc_judd(p, gt.binary, metric_seed).score;
        case MetricId::AucBorji: {
            NegativeSampler sampler;
            sampler.mode = NegativeSampler::Mode::Uniform;
            sampler.trials = params.borji_trials;
            sampler.seed = metric_seed;
            return auc_borji(p, gt.binary, sampler);
        }
        case MetricId::Sauc: {
            if (params.shuffle_pool == nullptr || params.shuffle_pool->empty())
                throw std::invalid_argument("shuffle pool required");
            NegativeSampler sampler;
            sampler.mode = NegativeSampler::Mode::Shuffled;
            sampler.pool = *params.shuffle_pool;
            sampler.images_per_trial = params.sauc_images_per_trial;
            sampler.trials = params.sauc_trials;
            sampler.seed = metric_seed;
            return sauc(p, gt.binary, sampler);
        }
        case MetricId::Nss:
            return nss(p, gt.binary);
        case MetricId::Ig: {
            if (params.ig_baseline == nullptr)
                throw std::invalid_argument("ig baseline required");
            return information_gain(normalize_sum(p), gt.binary, *params.ig_baseline,
                                    params.epsilon);
        }
        case MetricId::Sim:
            return sim(p, gt.dist);
        case MetricId::Cc:
            // Flat maps carry no signal: score at chance instead of failing
            // the whole run (the strict cc() itself refuses them).
            if (grid_is_constant(p)) return 0.0;
            return cc(p, gt.dist);
        case MetricId::Kl:
            return kl(normalize_sum(p), gt.dist, params.epsilon);
        case MetricId::KlSym:
            return kl_symmetric(normalize_sum(p), gt.dist, params.epsilon);
        case MetricId::Spearman:
            if (grid_is_constant(p)) return 0.0;  // same convention as Cc
            return spearman_cc_maps(p, gt.dist);
        case MetricId::Emd:
            return emd(p, gt.dist, params.emd_downscale).cost;
    }
    throw std::invalid_argument("unknown metric");
}

}  // namespace salmetrics
