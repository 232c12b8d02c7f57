#include "ffs/queueing.hpp"

#include <cmath>

#include "ffs/errors.hpp"

namespace ffsim {

void ServiceClass::validate() const {
    if (user_count < 0.0) throw InvalidModel("user_count must be nonnegative");
    if (!(arrival_rate > 0.0)) throw InvalidModel("arrival_rate must be positive");
    if (!(cycles_per_packet > 0.0)) throw InvalidModel("cycles_per_packet must be positive");
    if (!(tti_s > 0.0)) throw InvalidModel("tti_s must be positive");
    if (!(delay_budget_s > tti_s)) throw InvalidModel("delay_budget_s must exceed tti_s");
    if (!(reliability_target > 0.0 && reliability_target < 1.0))
        throw InvalidModel("reliability_target must be in (0,1)");
    if (!(sinr_threshold_linear > 0.0)) throw InvalidModel("sinr_threshold must be positive");
    if (!(gamma_linear >= 1.0)) throw InvalidModel("gamma must be >= 1");
}

void ModeProfile::validate() const {
    if (!(beta_cu > 0.0 && beta_cu < 1.0)) throw InvalidModel("beta_cu must be in (0,1)");
    if (std::abs(beta_cu + beta_du - 1.0) > 1e-12)
        throw InvalidModel("beta_cu + beta_du must equal 1");
    if (control_overhead_s < 0.0) throw InvalidModel("control_overhead_s must be >= 0");
    if (!(users_per_du > 0.0)) throw InvalidModel("users_per_du must be positive");
}

void ModeProfiles::validate() const {
    cm.validate();
    dm.validate();
    if (cm.control_overhead_s < dm.control_overhead_s)
        throw InvalidModel("t_co(CM) must be >= t_co(DM)");
}

void ServerSpec::validate() const {
    if (!(cu_rate > 0.0)) throw InvalidModel("cu_rate must be positive");
    if (!(du_efficiency > 0.0 && du_efficiency < 1.0))
        throw InvalidModel("du_efficiency must be in (0,1)");
    if (du_count < 1) throw InvalidModel("du_count must be >= 1");
    if (retrans_time_s < 0.0) throw InvalidModel("retrans_time_s must be >= 0");
}

SystemLoad workload(std::span<const ServiceClass> services, const ModeProfiles& modes,
                    std::span<const ModeSplit> mars, const ServerSpec& spec) {
    if (services.size() != mars.size()) throw InvalidModel("services/mars size mismatch");
    SystemLoad load;
    for (std::size_t s = 0; s < services.size(); ++s) {
        const auto& svc = services[s];
        for (Mode m : kModes) {
            const auto& prof = modes.get(m);
            double demand = svc.user_count * svc.arrival_rate * mars[s].get(m) *
                            svc.cycles_per_packet;
            load.rho_cu += demand * prof.beta_cu / spec.cu_rate;
            load.rho_du += prof.users_per_du * demand * prof.beta_du /
                           (spec.du_rate() * spec.du_count);
        }
    }
    return load;
}

double service_time_s(double beta, double cycles_per_packet, double server_rate) {
    return beta * cycles_per_packet / server_rate;
}

double ps_sojourn_mean(double tau_ser_s, double rho) {
    if (rho < 0.0 || rho >= 1.0) throw NotOperable("utilization outside [0,1)");
    return tau_ser_s / (1.0 - rho);
}

double queue_length_pmf(double rho, int q) {
    if (rho < 0.0 || rho >= 1.0) throw NotOperable("utilization outside [0,1)");
    if (q < 0) throw InvalidModel("q must be >= 0");
    return std::pow(rho, q) * (1.0 - rho);
}

double fcfs_waiting_s(std::span<const FcfsClass> classes) {
    double rho = 0.0;
    double second_moment_rate = 0.0;  // sum lambda_k E[S_k^2]
    for (const auto& c : classes) {
        rho += c.rate * c.service_s;
        second_moment_rate += c.rate * c.service_s * c.service_s;
    }
    if (rho >= 1.0) throw NotOperable("FCFS utilization >= 1");
    return second_moment_rate / (2.0 * (1.0 - rho));
}

double one_way_delay_s(double cu_sojourn_s, double du_sojourn_s, double tti_s,
                       double control_overhead_s) {
    // Fronthaul delay is neglected (wired fiber).
    return cu_sojourn_s + du_sojourn_s + tti_s + control_overhead_s;
}

int max_retransmissions(double one_way_s, double delay_budget_s, double retrans_time_s) {
    double slack = std::max(0.0, delay_budget_s - one_way_s);
    return static_cast<int>(std::floor(slack / (one_way_s + retrans_time_s)));
}

double retrans_success(double p_succ, int n_max) {
    return 1.0 - std::pow(1.0 - p_succ, n_max + 1);
}

double reliability(std::span<const ModeReliability> per_mode) {
    double total = 0.0;
    for (const auto& m : per_mode) total += retrans_success(m.p_succ, m.n_max) * m.mar;
    return total;
}

QueueState evaluate_queues(std::span<const ServiceClass> services, const ModeProfiles& modes,
                           std::span<const ModeSplit> mars, const ServerSpec& spec,
                           Discipline discipline) {
    SystemLoad load = workload(services, modes, mars, spec);
    QueueState state;
    state.rho_cu = load.rho_cu;
    state.rho_du = load.rho_du;
    state.operable = load.rho_cu < 1.0 && load.rho_du < 1.0;
    state.delays.assign(services.size(), {});
    if (!state.operable) return state;

    double fcfs_wait_cu = 0.0, fcfs_wait_du = 0.0;
    if (discipline == Discipline::FCFS) {
        std::vector<FcfsClass> cu_classes, du_classes;
        for (std::size_t s = 0; s < services.size(); ++s) {
            for (Mode m : kModes) {
                const auto& prof = modes.get(m);
                double rate = services[s].user_count * services[s].arrival_rate * mars[s].get(m);
                cu_classes.push_back(
                    {rate, service_time_s(prof.beta_cu, services[s].cycles_per_packet, spec.cu_rate)});
                du_classes.push_back(
                    {prof.users_per_du * rate / spec.du_count,
                     service_time_s(prof.beta_du, services[s].cycles_per_packet, spec.du_rate())});
            }
        }
        fcfs_wait_cu = fcfs_waiting_s(cu_classes);
        fcfs_wait_du = fcfs_waiting_s(du_classes);
    }

    for (std::size_t s = 0; s < services.size(); ++s) {
        for (Mode m : kModes) {
            const auto& prof = modes.get(m);
            double tau_cu = service_time_s(prof.beta_cu, services[s].cycles_per_packet, spec.cu_rate);
            double tau_du = service_time_s(prof.beta_du, services[s].cycles_per_packet, spec.du_rate());
            QueueState::PathDelay d;
            if (discipline == Discipline::PS) {
                d.cu_sojourn_s = ps_sojourn_mean(tau_cu, load.rho_cu);
                d.du_sojourn_s = ps_sojourn_mean(tau_du, load.rho_du);
            } else {
                d.cu_sojourn_s = fcfs_wait_cu + tau_cu;
                d.du_sojourn_s = fcfs_wait_du + tau_du;
            }
            d.one_way_s = one_way_delay_s(d.cu_sojourn_s, d.du_sojourn_s, services[s].tti_s,
                                          prof.control_overhead_s);
            state.delays[s][mode_index(m)] = d;
        }
    }
    return state;
}

double service_reliability(const QueueState& state, std::size_t service_index,
                           std::span<const ServiceClass> services,
                           std::span<const ModeSplit> mars, const ServerSpec& spec,
                           const std::array<double, 2>& p_succ_per_mode) {
    if (!state.operable) throw NotOperable("queue state is not operable");
    const auto& svc = services[service_index];
    std::array<ModeReliability, 2> per_mode;
    for (Mode m : kModes) {
        int i = mode_index(m);
        double t_ow = state.delays[service_index][i].one_way_s;
        per_mode[i].p_succ = p_succ_per_mode[i];
        per_mode[i].n_max = max_retransmissions(t_ow, svc.delay_budget_s, spec.retrans_time_s);
        per_mode[i].mar = mars[service_index].get(m);
    }
    return reliability(per_mode);
}

}  // namespace ffsim
