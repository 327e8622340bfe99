#include "kato/diagnostics/record.hpp"

#include "kato/fields/norms.hpp"
#include "kato/fields/operators.hpp"

namespace kato {

void record_sample(TrajectoryRecord& rec, double time, const VelocityField& u, const NoiseModel& model,
                   const double* w) {
    rec.times.push_back(time);
    rec.energy.push_back(inner(u, u));
    const DissipationPair d = dissipation(u, rec.layer_delta);
    rec.enstrophy.push_back(d.full);
    rec.layer_dissipation.push_back(d.layer);
    for (int k = 0; k < model.n_modes; ++k) {
        rec.cross.push_back(inner(u, model.modes[k]));
        rec.brownian.push_back(w ? w[k] : 0.0);
    }
}

}  // namespace kato
