#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ffs/geometry.hpp"

namespace ffsim {

enum class ServiceKind { Embb, Urllc };
enum class Server { CU, DU };
enum class Discipline { PS, FCFS };

inline int mode_index(Mode m) { return m == Mode::DM ? 0 : 1; }
constexpr std::array<Mode, 2> kModes = {Mode::DM, Mode::CM};

/// Per-service traffic, processing cost, and requirement set.
struct ServiceClass {
    ServiceKind name = ServiceKind::Embb;
    double user_count = 0.0;            // K_s
    double arrival_rate = 0.0;          // packets/s per user
    double cycles_per_packet = 0.0;     // l_s
    double tti_s = 0.0;
    double delay_budget_s = 0.0;        // t_s^max
    double reliability_target = 0.0;    // R_s
    double sinr_threshold_linear = 1.0; // T_s
    double gamma_linear = 1.0;          // gamma_s

    void validate() const;
};

/// Per-mode processing split and overhead.
struct ModeProfile {
    double beta_cu = 0.5;           // share of processing at the CU
    double beta_du = 0.5;           // 1 - beta_cu
    double control_overhead_s = 0;  // t_co
    double users_per_du = 1.0;      // kappa

    void validate() const;
};

struct ModeProfiles {
    ModeProfile cm;
    ModeProfile dm;
    const ModeProfile& get(Mode m) const { return m == Mode::CM ? cm : dm; }
    void validate() const;
};

struct ServerSpec {
    double cu_rate = 1e9;          // cycles/s
    double du_efficiency = 0.2;    // eta in (0,1)
    int du_count = 20;             // N
    double retrans_time_s = 1e-4;  // t_re

    double du_rate() const { return du_efficiency * cu_rate; }
    void validate() const;
};

/// Mode allocation ratio of one service.
struct ModeSplit {
    double p_cm = 0.0;
    double p_dm = 1.0;
    double get(Mode m) const { return m == Mode::CM ? p_cm : p_dm; }
};

struct SystemLoad {
    double rho_cu = 0.0;
    double rho_du = 0.0;
    bool operable() const { return rho_cu > 0.0 && rho_cu < 1.0 && rho_du > 0.0 && rho_du < 1.0; }
};

/// Per-(service, mode) delay breakdown, plus the server utilizations.
struct QueueState {
    double rho_cu = 0.0;
    double rho_du = 0.0;
    bool operable = false;
    struct PathDelay {
        double cu_sojourn_s = 0.0;
        double du_sojourn_s = 0.0;
        double one_way_s = 0.0;
    };
    std::vector<std::array<PathDelay, 2>> delays;  // [service][mode_index]
};

/// Server utilizations per the processing-load split; values >= 1 are legal
/// outputs (operability is judged by the caller).
SystemLoad workload(std::span<const ServiceClass> services, const ModeProfiles& modes,
                    std::span<const ModeSplit> mars, const ServerSpec& spec);

/// FCFS serving time of one packet: beta * l / S.
double service_time_s(double beta, double cycles_per_packet, double server_rate);

/// Processor-sharing mean sojourn tau_ser / (1 - rho); throws NotOperable
/// when rho >= 1.
double ps_sojourn_mean(double tau_ser_s, double rho);

/// Geometric queue-length pmf rho^q (1 - rho).
double queue_length_pmf(double rho, int q);

struct FcfsClass {
    double rate = 0.0;       // aggregate arrivals/s at the server
    double service_s = 0.0;  // deterministic service time
};

/// Multi-class M/D/1 FCFS mean waiting time (Pollaczek-Khinchine).
double fcfs_waiting_s(std::span<const FcfsClass> classes);

double one_way_delay_s(double cu_sojourn_s, double du_sojourn_s, double tti_s,
                       double control_overhead_s);

/// Largest retransmission count fitting the delay budget:
/// floor((t_max - t_ow)^+ / (t_ow + t_re)).
int max_retransmissions(double one_way_s, double delay_budget_s, double retrans_time_s);

/// 1 - (1 - p_succ)^(n_max + 1).
double retrans_success(double p_succ, int n_max);

struct ModeReliability {
    double p_succ = 0.0;  // per-attempt success probability in this mode
    int n_max = 0;
    double mar = 0.0;  // p_{M,s}
};

/// Mode-weighted mixture of the per-mode retransmission success.
double reliability(std::span<const ModeReliability> per_mode);

/// Full delay evaluation under PS or the FCFS baseline. Utilizations are
/// always filled in; per-path delays only when operable.
QueueState evaluate_queues(std::span<const ServiceClass> services, const ModeProfiles& modes,
                           std::span<const ModeSplit> mars, const ServerSpec& spec,
                           Discipline discipline);

/// End-to-end reliability of one service given per-mode success
/// probabilities aligned with kModes.
double service_reliability(const QueueState& state, std::size_t service_index,
                           std::span<const ServiceClass> services,
                           std::span<const ModeSplit> mars, const ServerSpec& spec,
                           const std::array<double, 2>& p_succ_per_mode);

}  // namespace ffsim
