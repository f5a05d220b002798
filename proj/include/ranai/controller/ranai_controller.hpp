#pragma once

#include "ranai/agent/agent_interface.hpp"
#include "ranai/agent/reward.hpp"
#include "ranai/app/app_mode.hpp"
#include "ranai/app/sensor_app.hpp"
#include "ranai/controller/notification.hpp"
#include "ranai/controller/state_builder.hpp"
#include "ranai/ran/ran_cell.hpp"

#include <iosfwd>
#include <optional>
#include <unordered_map>

namespace ranai {

struct ControllerConfig
{
    SimTime period = SimTime::Millis(100);
    NotificationMechanism mechanism = NotificationMechanism::Ideal;
    bool learn = true;
    bool explore = true;

    void Validate() const;
};

enum class NotificationOutcome : std::uint8_t
{
    Pending,
    Applied, // ideal: at issue time
    Delivered,
    Corrupted,
    Expired,
    Overflow,
};

std::string_view ToString(NotificationOutcome o);

struct NotificationRecord
{
    UeIndex ue = 0;
    ActionIndex action = 0;
    SimTime issuedAt;
    NotificationOutcome outcome = NotificationOutcome::Pending;
    std::optional<SimTime> deliveredAt;
    std::uint64_t packetId = 0;

    /// deliveredAt - issuedAt; zero for ideal notifications.
    std::optional<SimTime> Lag() const;
};

struct CellReport
{
    SimTime t;
    std::size_t attachedUes = 0;
    std::size_t activeUes = 0;
    std::uint64_t servedBytes = 0;
    double meanShare = 0.0; // over active UEs
};

struct UeHandles
{
    SensorApp* app = nullptr;
    AppStatsCalculator* stats = nullptr;
};

/// Periodic KPI collection and mode control for every UE of one cell. With
/// no agent attached the controller only measures (constant policies).
class RanAiController
{
  public:
    using WindowCallback = std::function<void(const AppStatsWindow&, double reward)>;
    using TrainingCallback = std::function<void(const LossReport&)>;

    RanAiController(ControllerConfig cfg,
                    RewardConfig reward,
                    ModeTable modes,
                    RanCell& cell,
                    std::vector<UeHandles> ues,
                    AgentInterface* agent);

    void SetWindowCallback(WindowCallback cb) { m_onWindow = std::move(cb); }
    void SetTrainingCallback(TrainingCallback cb) { m_onTraining = std::move(cb); }
    /// t,ue,f0..f7,action,reward,notified,notificationOutcome
    void SetControllerLog(std::ostream* out);
    /// t,attachedUes,activeUes,servedBytes,meanShare
    void SetCellLog(std::ostream* out);

    /// Status updates at now, now + T, ... while t < stop.
    void Install(Simulator& sim, SimTime stop);

    void SendStatusUpdate(SimTime t);

    /// Closes the last window at t without a learning step and flushes logs.
    void Finish(SimTime t);

    // Downlink outcomes of notification packets, wired by the scenario.
    void OnNotificationDelivered(const Packet& pkt, SimTime at);
    void OnNotificationLost(const Packet& pkt, SimTime at, LossReason reason);

    CellReport CollectCellKpis(SimTime t) const;

    std::uint64_t Updates() const { return m_updates; }
    std::uint64_t ActionQueries() const { return m_actionQueries; }
    std::uint64_t Transitions(UeIndex ue) const { return m_transitions.at(ue); }
    const std::vector<NotificationRecord>& Notifications() const { return m_records; }
    const std::vector<std::optional<StateVector>>& LastStates() const { return m_lastState; }
    /// Mode the UE will run once in-flight notifications land.
    ModeIndex TargetMode(UeIndex ue) const;

    static void WriteNotificationCsv(std::ostream& out, const std::vector<NotificationRecord>& records);

  private:
    struct PendingRow
    {
        SimTime t;
        UeIndex ue = 0;
        StateVector state;
        ActionIndex action = 0;
        std::optional<double> reward;
        std::optional<std::size_t> record;
    };

    void Dispatch(UeIndex ue, ActionIndex action, SimTime t);
    void FlushRows();
    void ScheduleNext(Simulator& sim, SimTime at, SimTime stop);

    ControllerConfig m_cfg;
    RewardConfig m_reward;
    ModeTable m_modes;
    RanCell& m_cell;
    std::vector<UeHandles> m_ues;
    AgentInterface* m_agent;
    StateScales m_scales;

    std::vector<std::optional<StateVector>> m_lastState;
    std::vector<std::optional<std::size_t>> m_inFlight; // latest real notification per UE
    std::vector<NotificationRecord> m_records;
    std::unordered_map<std::uint64_t, std::size_t> m_recordByPacket;
    std::vector<std::uint64_t> m_transitions;
    std::vector<PendingRow> m_rows;
    std::uint64_t m_updates = 0;
    std::uint64_t m_actionQueries = 0;
    std::uint64_t m_nextPacketId = 1ULL << 48;
    bool m_finished = false;

    WindowCallback m_onWindow;
    TrainingCallback m_onTraining;
    std::ostream* m_log = nullptr;
    std::ostream* m_cellLog = nullptr;
};

} // namespace ranai
