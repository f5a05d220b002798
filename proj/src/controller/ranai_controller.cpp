#include "ranai/controller/ranai_controller.hpp"

#include "ranai/util/csv.hpp"

#include <ostream>
#include <stdexcept>

namespace ranai {

void
ControllerConfig::Validate() const
{
    if (period <= SimTime())
    {
        throw std::invalid_argument("controller period must be positive");
    }
}

std::string_view
ToString(NotificationOutcome o)
{
    switch (o)
    {
    case NotificationOutcome::Pending:
        return "pending";
    case NotificationOutcome::Applied:
        return "applied";
    case NotificationOutcome::Delivered:
        return "delivered";
    case NotificationOutcome::Corrupted:
        return "corrupted";
    case NotificationOutcome::Expired:
        return "expired";
    case NotificationOutcome::Overflow:
        return "overflow";
    }
    return "unknown";
}

std::optional<SimTime>
NotificationRecord::Lag() const
{
    if (!deliveredAt)
    {
        return std::nullopt;
    }
    return *deliveredAt - issuedAt;
}

RanAiController::RanAiController(ControllerConfig cfg,
                                 RewardConfig reward,
                                 ModeTable modes,
                                 RanCell& cell,
                                 std::vector<UeHandles> ues,
                                 AgentInterface* agent)
    : m_cfg(cfg),
      m_reward(reward),
      m_modes(std::move(modes)),
      m_cell(cell),
      m_ues(std::move(ues)),
      m_agent(agent)
{
    m_cfg.Validate();
    m_reward.Validate();
    if (m_ues.size() != m_cell.NumUes())
    {
        throw std::invalid_argument("controller and cell disagree on the number of UEs");
    }
    for (const auto& h : m_ues)
    {
        if (!h.app || !h.stats)
        {
            throw std::invalid_argument("controller needs an app and a stats calculator per UE");
        }
    }
    m_scales.maxDelay = m_reward.maxDelay;
    m_scales.numModes = m_modes.Size();
    m_scales.maxFrameBytes = m_ues.empty() ? 1.0 : m_ues.front().app->Sizer().MaxFrameBytes();
    m_lastState.resize(m_ues.size());
    m_inFlight.resize(m_ues.size());
    m_transitions.assign(m_ues.size(), 0);
}

void
RanAiController::SetControllerLog(std::ostream* out)
{
    m_log = out;
    if (m_log)
    {
        *m_log << "t,ue";
        for (std::size_t i = 0; i < kStateFeatures; ++i)
        {
            *m_log << ",f" << i;
        }
        *m_log << ",action,reward,notified,notificationOutcome\n";
    }
}

void
RanAiController::SetCellLog(std::ostream* out)
{
    m_cellLog = out;
    if (m_cellLog)
    {
        *m_cellLog << "t,attachedUes,activeUes,servedBytes,meanShare\n";
    }
}

void
RanAiController::Install(Simulator& sim, SimTime stop)
{
    ScheduleNext(sim, sim.Now(), stop);
}

void
RanAiController::ScheduleNext(Simulator& sim, SimTime at, SimTime stop)
{
    if (at >= stop)
    {
        return;
    }
    sim.Schedule(at, [this, &sim, at, stop] {
        SendStatusUpdate(at);
        ScheduleNext(sim, at + m_cfg.period, stop);
    });
}

CellReport
RanAiController::CollectCellKpis(SimTime t) const
{
    CellReport r;
    r.t = t;
    r.attachedUes = m_cell.NumUes();
    double shareSum = 0.0;
    for (UeIndex ue = 0; ue < m_cell.NumUes(); ++ue)
    {
        const auto& l = m_cell.Uplink(ue);
        r.servedBytes += l.servedBytesWindow;
        if (l.servedBytesWindow > 0 || l.Backlogged())
        {
            ++r.activeUes;
            if (l.ttiCountWindow > 0)
            {
                shareSum += l.shareSumWindow / static_cast<double>(l.ttiCountWindow);
            }
        }
    }
    if (r.activeUes > 0)
    {
        r.meanShare = shareSum / static_cast<double>(r.activeUes);
    }
    return r;
}

ModeIndex
RanAiController::TargetMode(UeIndex ue) const
{
    if (const auto& f = m_inFlight.at(ue))
    {
        return m_records[*f].action;
    }
    return m_ues.at(ue).app->CurrentMode();
}

void
RanAiController::SendStatusUpdate(SimTime t)
{
    if (m_finished)
    {
        throw std::logic_error("status update after Finish");
    }
    FlushRows();
    if (m_cfg.mechanism == NotificationMechanism::Real)
    {
        // Stale notifications count as lost before deciding on re-dispatch.
        m_cell.ExpireNotifications(t);
    }

    const CellReport cell = CollectCellKpis(t);
    if (m_cellLog)
    {
        *m_cellLog << FormatDouble(t.GetSeconds()) << ',' << cell.attachedUes << ','
                   << cell.activeUes << ',' << cell.servedBytes << ','
                   << FormatDouble(cell.meanShare) << '\n';
    }

    const std::size_t n = m_ues.size();
    std::vector<StateVector> states(n);
    std::vector<std::optional<double>> rewards(n);
    std::vector<Transition> transitions;
    for (UeIndex ue = 0; ue < n; ++ue)
    {
        auto& h = m_ues[ue];
        auto& link = m_cell.Uplink(ue);
        KpiWindow k;
        k.app = h.stats->CloseWindow(t, h.app->CurrentMode());
        k.meanSnrDb = link.ttiCountWindow > 0
                          ? link.snrSumWindow / static_cast<double>(link.ttiCountWindow)
                          : link.snrDb;
        k.meanShare = link.ttiCountWindow > 0
                          ? link.shareSumWindow / static_cast<double>(link.ttiCountWindow)
                          : 0.0;
        k.bufferFraction = static_cast<double>(link.BufferBytes()) /
                           static_cast<double>(link.CapacityBytes());
        k.servedBytes = link.servedBytesWindow;
        k.currentMode = h.app->CurrentMode();
        k.lastFrameBytes = h.app->LastFrameBytes();
        link.servedBytesWindow = 0;
        link.snrSumWindow = 0.0;
        link.shareSumWindow = 0.0;
        link.ttiCountWindow = 0;

        states[ue] = BuildStateVector(k, m_scales);

        if (m_lastState[ue])
        {
            // The window just closed was governed by the mode its frames used.
            const ModeIndex performed = k.app.mode;
            const double r =
                ComputeReward(m_reward, k.app, m_modes.At(performed).chamferDistance);
            rewards[ue] = r;
            if (m_onWindow)
            {
                m_onWindow(k.app, r);
            }
            transitions.push_back({ue, *m_lastState[ue], performed, states[ue], r});
            ++m_transitions[ue];
        }
        m_lastState[ue] = states[ue];
    }
    ++m_updates;

    std::vector<ActionIndex> actions(n);
    if (m_agent)
    {
        if (m_cfg.learn && !transitions.empty())
        {
            const auto report = m_agent->Update(transitions);
            if (report.trained && m_onTraining)
            {
                m_onTraining(report);
            }
        }
        actions = m_agent->GetAction(states, m_cfg.explore);
        ++m_actionQueries;
        if (actions.size() != n)
        {
            throw std::runtime_error("agent returned " + std::to_string(actions.size()) +
                                     " actions for " + std::to_string(n) + " users");
        }
    }

    for (UeIndex ue = 0; ue < n; ++ue)
    {
        PendingRow row{t, ue, states[ue], m_ues[ue].app->CurrentMode(), rewards[ue], std::nullopt};
        if (m_agent)
        {
            row.action = actions[ue];
            if (actions[ue] >= m_modes.Size())
            {
                throw std::runtime_error("agent chose action " + std::to_string(actions[ue]) +
                                         " outside the mode table");
            }
            if (actions[ue] != TargetMode(ue))
            {
                Dispatch(ue, actions[ue], t);
                row.record = m_records.size() - 1;
            }
        }
        m_rows.push_back(std::move(row));
    }
}

void
RanAiController::Dispatch(UeIndex ue, ActionIndex action, SimTime t)
{
    if (ue >= m_ues.size())
    {
        throw std::out_of_range("notification for unknown UE " + std::to_string(ue));
    }
    NotificationRecord rec;
    rec.ue = ue;
    rec.action = action;
    rec.issuedAt = t;

    if (m_cfg.mechanism == NotificationMechanism::Ideal)
    {
        m_ues[ue].app->SetMode(action, t);
        rec.outcome = NotificationOutcome::Applied;
        rec.deliveredAt = t;
        m_records.push_back(rec);
        return;
    }

    Notification n{action, ImsiOf(ue), RntiOf(ue), t, NotificationMechanism::Real};
    Packet pkt;
    pkt.id = m_nextPacketId++;
    pkt.ue = ue;
    pkt.direction = Direction::Downlink;
    pkt.kind = PacketKind::RanAiNotification;
    pkt.sizeBytes = kNotificationBytes;
    pkt.createdAt = t;
    pkt.payload = EncodeNotification(n);
    rec.packetId = pkt.id;

    const std::size_t idx = m_records.size();
    m_records.push_back(rec);
    m_recordByPacket[pkt.id] = idx;
    m_inFlight[ue] = idx;
    // An overflow comes back synchronously through OnNotificationLost.
    m_cell.SendDownlink(pkt, t);
}

void
RanAiController::OnNotificationDelivered(const Packet& pkt, SimTime at)
{
    const auto n = DecodeNotification(pkt.payload);
    const UeIndex ue = n.rnti - 1;
    if (n.rnti == 0 || ue >= m_ues.size() || ImsiOf(ue) != n.imsi)
    {
        throw std::runtime_error("notification addressed to unknown UE (rnti " +
                                 std::to_string(n.rnti) + ")");
    }
    m_ues[ue].app->SetMode(n.action, at);
    auto it = m_recordByPacket.find(pkt.id);
    if (it == m_recordByPacket.end())
    {
        return;
    }
    auto& rec = m_records[it->second];
    rec.outcome = NotificationOutcome::Delivered;
    rec.deliveredAt = at;
    if (m_inFlight[ue] == it->second)
    {
        m_inFlight[ue].reset();
    }
}

void
RanAiController::OnNotificationLost(const Packet& pkt, SimTime, LossReason reason)
{
    auto it = m_recordByPacket.find(pkt.id);
    if (it == m_recordByPacket.end())
    {
        return;
    }
    auto& rec = m_records[it->second];
    switch (reason)
    {
    case LossReason::Overflow:
        rec.outcome = NotificationOutcome::Overflow;
        break;
    case LossReason::Corrupted:
        rec.outcome = NotificationOutcome::Corrupted;
        break;
    case LossReason::Expired:
        rec.outcome = NotificationOutcome::Expired;
        break;
    }
    if (m_inFlight[rec.ue] == it->second)
    {
        m_inFlight[rec.ue].reset();
    }
}

void
RanAiController::FlushRows()
{
    if (m_log)
    {
        for (const auto& row : m_rows)
        {
            *m_log << FormatDouble(row.t.GetSeconds()) << ',' << row.ue;
            for (double f : row.state)
            {
                *m_log << ',' << FormatDouble(f);
            }
            *m_log << ',' << row.action << ',' << (row.reward ? FormatDouble(*row.reward) : "")
                   << ',' << (row.record ? 1 : 0) << ','
                   << (row.record ? ToString(m_records[*row.record].outcome) : "none") << '\n';
        }
    }
    m_rows.clear();
}

void
RanAiController::Finish(SimTime t)
{
    if (m_finished)
    {
        return;
    }
    FlushRows();
    for (UeIndex ue = 0; ue < m_ues.size(); ++ue)
    {
        auto& h = m_ues[ue];
        const auto w = h.stats->CloseWindow(t, h.app->CurrentMode());
        if (m_lastState[ue] && m_onWindow)
        {
            m_onWindow(w, ComputeReward(m_reward, w, m_modes.At(w.mode).chamferDistance));
        }
    }
    m_finished = true;
}

void
RanAiController::WriteNotificationCsv(std::ostream& out,
                                      const std::vector<NotificationRecord>& records)
{
    out << "ue,action,issuedAt,outcome,deliveredAt,lagMs\n";
    for (const auto& r : records)
    {
        out << r.ue << ',' << r.action << ',' << FormatDouble(r.issuedAt.GetSeconds()) << ','
            << ToString(r.outcome) << ',';
        if (r.deliveredAt)
        {
            out << FormatDouble(r.deliveredAt->GetSeconds());
        }
        out << ',';
        if (const auto lag = r.Lag())
        {
            out << FormatDouble(lag->GetMillis());
        }
        out << '\n';
    }
}

} // namespace ranai
