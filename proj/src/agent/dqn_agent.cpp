#include "ranai/agent/dqn_agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ranai {

void
AgentHyperparams::Validate() const
{
    if (layers.size() < 2)
    {
        throw std::invalid_argument("agent network needs at least two layer widths");
    }
    if (!(discount >= 0.0 && discount < 1.0))
    {
        throw std::invalid_argument("discount must lie in [0, 1)");
    }
    if (!(learningRate > 0.0) || !(weightDecay >= 0.0))
    {
        throw std::invalid_argument("learning rate must be positive and weight decay >= 0");
    }
    if (batchSize == 0 || replayCapacity < batchSize || targetSyncPeriod == 0)
    {
        throw std::invalid_argument("need 0 < batch size <= replay capacity and a positive sync period");
    }
    if (!(epsilonStart >= 0.0 && epsilonStart <= 1.0 && epsilonEnd >= 0.0 && epsilonEnd <= 1.0))
    {
        throw std::invalid_argument("epsilon schedule must stay within [0, 1]");
    }
}

DqnAgent::DqnAgent(AgentHyperparams params, std::uint64_t seed)
    : m_params(std::move(params)),
      m_replay(std::max<std::size_t>(m_params.replayCapacity, 1)),
      m_exploreRng(seed, "agent/explore"),
      m_replayRng(seed, "agent/replay")
{
    m_params.Validate();
    RngStream initRng(seed, "agent/init");
    m_online = QNetwork::Random(m_params.layers, initRng);
    m_target = m_online;
    m_grad = QNetwork(m_params.layers);
}

double
DqnAgent::Epsilon() const
{
    if (m_params.epsilonDecaySteps == 0)
    {
        return m_params.epsilonEnd;
    }
    const double f = std::min(1.0, static_cast<double>(m_exploreSteps) /
                                       static_cast<double>(m_params.epsilonDecaySteps));
    return m_params.epsilonStart + (m_params.epsilonEnd - m_params.epsilonStart) * f;
}

std::vector<ActionIndex>
DqnAgent::GetAction(std::span<const StateVector> states, bool explore)
{
    const double eps = explore ? Epsilon() : 0.0;
    const std::size_t numActions = m_online.OutputSize();
    std::vector<ActionIndex> actions;
    actions.reserve(states.size());
    for (const auto& s : states)
    {
        if (eps > 0.0 && m_exploreRng.Uniform() < eps)
        {
            actions.push_back(static_cast<ActionIndex>(m_exploreRng.UniformInt(numActions)));
            continue;
        }
        const auto q = m_online.Forward(s);
        actions.push_back(static_cast<ActionIndex>(ArgMax(q)));
    }
    if (explore)
    {
        ++m_exploreSteps;
    }
    return actions;
}

LossReport
DqnAgent::Update(std::span<const Transition> transitions)
{
    for (const auto& t : transitions)
    {
        if (t.state.size() != m_online.InputSize() || t.nextState.size() != m_online.InputSize() ||
            t.action >= m_online.OutputSize())
        {
            throw std::invalid_argument("DqnAgent::Update: transition does not match network shape");
        }
        m_replay.Add(t);
    }

    LossReport report;
    report.epsilon = Epsilon();
    report.updateIndex = m_updates;
    if (m_replay.Size() < m_params.batchSize)
    {
        return report;
    }

    const auto batch = m_replay.Sample(m_params.batchSize, m_replayRng);
    std::vector<QSample> samples;
    samples.reserve(batch.size());
    double qSum = 0.0;
    for (const auto* t : batch)
    {
        const double y =
            DoubleQTarget(m_online, m_target, t->nextState, t->reward, m_params.discount);
        samples.push_back({t->state, t->action, y});
        const auto q = m_online.Forward(t->state);
        qSum += *std::max_element(q.begin(), q.end());
    }
    report.loss = SquaredErrorLoss(m_online, samples, m_grad);
    report.meanQ = qSum / static_cast<double>(batch.size());
    SgdStep(m_online, m_grad, m_params.learningRate, m_params.weightDecay);

    ++m_updates;
    if (m_updates % m_params.targetSyncPeriod == 0)
    {
        m_target = m_online;
    }
    report.trained = true;
    report.updateIndex = m_updates;
    if (m_log)
    {
        m_log(report);
    }
    return report;
}

void
DqnAgent::LoadNetwork(const QNetwork& net)
{
    if (net.Shape() != m_params.layers)
    {
        throw std::invalid_argument("DqnAgent::LoadNetwork: shape does not match configuration");
    }
    m_online = net;
    m_target = net;
}

} // namespace ranai
