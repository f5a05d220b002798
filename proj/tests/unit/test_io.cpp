#include "ranai/agent/model_io.hpp"
#include "ranai/io/experiment.hpp"
#include "ranai/io/figdata.hpp"
#include "ranai/io/run_config.hpp"
#include "ranai/io/summary.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

using namespace ranai;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Scratch directory removed at scope exit.
struct TempDir
{
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("ranai_io_" + std::to_string(::getpid()) + "_" + name))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path path;
};

std::string
Slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t
LineCount(const fs::path& p)
{
    std::ifstream in(p);
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line))
    {
        ++n;
    }
    return n;
}

RunConfig
Constant(const std::string& mode, double seconds, std::size_t ues = 1)
{
    RunConfig cfg;
    cfg.policy = Policy::Parse("constant:" + mode);
    cfg.agent.mode = AgentMode::Off;
    cfg.scenario.durationSeconds = seconds;
    cfg.scenario.numUes = ues;
    return cfg;
}

int
RunCli(const std::string& args)
{
    const std::string cmd = std::string(RANAI_SIM_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("defaults validate and survive a JSON round trip")
{
    RunConfig cfg;
    CHECK(cfg.Problems().empty());
    const json j = ToJson(cfg);
    const auto back = ParseRunConfig(j);
    CHECK(ToJson(back) == j);
    CHECK(back.Duration() == SimTime::Seconds(80));
    CHECK(back.app.modes.Size() == 3);
}

TEST_CASE("config overlay keeps unspecified defaults")
{
    const auto cfg = ParseRunConfig(json::parse(R"({
        "seed": 9, "policy": "constant:C-SA",
        "scenario": {"num_ues": 5},
        "controller": {"mechanism": "real"},
        "agent": {"mode": "off"}
    })"));
    CHECK(cfg.seed == 9);
    CHECK(cfg.policy.kind == Policy::Kind::Constant);
    CHECK(cfg.policy.mode == "C-SA");
    CHECK(cfg.scenario.numUes == 5);
    CHECK(cfg.controller.mechanism == NotificationMechanism::Real);
    CHECK(cfg.controller.period == SimTime::Millis(100));
    CHECK(cfg.reward.maxDelay == 0.050);
}

TEST_CASE("invalid configs list every problem at once")
{
    const auto doc = json::parse(R"({
        "sead": 1,
        "policy": "dql",
        "app": {"initial_mode": "C-XX"},
        "scenario": {"num_ues": 0, "duration_s": 80.05},
        "ran": {"tti_ms": "one"},
        "reward": {"alpha": 1.5},
        "agent": {"layers": [7, 12, 3]}
    })");
    try
    {
        ParseRunConfig(doc);
        FAIL("expected a ConfigError");
    }
    catch (const ConfigError& e)
    {
        const auto& items = e.Items();
        std::string all;
        for (const auto& i : items)
        {
            all += i + "\n";
        }
        INFO(all);
        CHECK(items.size() >= 6);
        CHECK(all.find("sead") != std::string::npos);
        CHECK(all.find("C-XX") != std::string::npos);
        CHECK(all.find("num_ues") != std::string::npos);
        CHECK(all.find("tti_ms") != std::string::npos);
        CHECK(all.find("alpha") != std::string::npos);
        CHECK(all.find("duration") != std::string::npos);
        CHECK(all.find("layers") != std::string::npos);
    }
    RunConfig bad;
    bad.policy = Policy::Parse("dql");
    bad.agent.mode = AgentMode::Off;
    CHECK_FALSE(bad.Problems().empty());
    CHECK_THROWS(Policy::Parse("greedy"));
}

TEST_CASE("percentiles interpolate linearly")
{
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(Percentile(v, 0.0) == 1.0);
    CHECK(Percentile(v, 1.0) == 4.0);
    CHECK(Percentile(v, 0.25) == 1.75);
    CHECK(Percentile(v, 0.5) == 2.5);
    CHECK(Percentile(std::vector<double>{7.0}, 0.95) == 7.0);
    CHECK_THROWS(Percentile({}, 0.5));
    const auto d = ComputeDelayStats({40.0, 10.0, 30.0, 20.0});
    CHECK(d.count == 4);
    CHECK(d.meanMs == 25.0);
    CHECK(d.p50Ms == 25.0);
    CHECK(d.p95Ms == doctest::Approx(38.5));
    CHECK(ComputeDelayStats({}).count == 0);
}

TEST_CASE("constant policies give the exact per-mode QoE")
{
    const std::vector<std::pair<std::string, double>> expected{{"C-R", 1.0}, {"C-SC", 0.88}, {"C-SA", 0.22}};
    for (const auto& [mode, qoe] : expected)
    {
        for (auto mech : {NotificationMechanism::Ideal, NotificationMechanism::Real})
        {
            for (std::size_t ues : {1u, 5u})
            {
                auto cfg = Constant(mode, 4.0, ues);
                cfg.controller.mechanism = mech;
                const auto a = Run(cfg, {});
                CAPTURE(mode);
                CAPTURE(ues);
                CHECK(std::abs(a.summary.meanQoe - qoe) < 1e-12);
                CHECK(a.summary.notifications == 0);
                CHECK(a.summary.windows == 40 * ues);
            }
        }
    }
}

TEST_CASE("fixed seed gives byte-identical outputs")
{
    TempDir a("det_a"), b("det_b");
    auto cfg = Constant("C-SC", 6.0, 2);
    cfg.outputs.ttiLog = true;
    cfg.outputs.channelTrace = true;
    Run(cfg, a.path);
    Run(cfg, b.path);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(a.path))
    {
        const auto name = e.path().filename();
        CAPTURE(name.string());
        REQUIRE(fs::exists(b.path / name));
        CHECK(Slurp(e.path()) == Slurp(b.path / name));
        ++files;
    }
    CHECK(files >= 9);

    TempDir c("det_c");
    cfg.seed = 2;
    Run(cfg, c.path);
    CHECK(Slurp(a.path / "bursts.csv") != Slurp(c.path / "bursts.csv"));
}

TEST_CASE("DQL training is reproducible and the saved model re-evaluates identically")
{
    TempDir a("train_a"), b("train_b"), e("eval");
    RunConfig cfg;
    cfg.scenario.durationSeconds = 3.0;
    cfg.agent.hyper.batchSize = 8;
    TrainOptions opts;
    opts.episodes = 2;
    opts.outDir = a.path;
    const auto first = TrainThenEval(cfg, opts);
    opts.outDir = b.path;
    TrainThenEval(cfg, opts);
    CHECK(Slurp(a.path / "model.txt") == Slurp(b.path / "model.txt"));
    CHECK(Slurp(a.path / "summary.json") == Slurp(b.path / "summary.json"));
    CHECK(LineCount(a.path / "episodes.csv") == 3);

    const auto net = LoadModelFile((a.path / "model.txt").string(), cfg.agent.hyper.layers);
    const auto again = Evaluate(cfg, net, e.path);
    CHECK(ToJson(again.summary, cfg.app.modes) == ToJson(first.summary, cfg.app.modes));
    CHECK(Slurp(e.path / "stats.csv") == Slurp(a.path / "stats.csv"));

    RunConfig evalCfg = cfg;
    evalCfg.agent.mode = AgentMode::Evaluate;
    CHECK_THROWS_AS(Run(evalCfg, {}), ConfigError);
    evalCfg.agent.modelPath = (a.path / "model.txt").string();
    CHECK(ToJson(Run(evalCfg, {}).summary, cfg.app.modes) == ToJson(first.summary, cfg.app.modes));
}

TEST_CASE("exploration frozen at 1 picks modes uniformly")
{
    RunConfig cfg;
    cfg.agent.hyper.epsilonStart = 1.0;
    cfg.agent.hyper.epsilonEnd = 1.0;
    std::vector<double> fractions;
    TrainOptions opts;
    opts.episodes = 1;
    opts.progress = [&](std::size_t, const Summary& s) { fractions = s.modeFraction; };
    TrainThenEval(cfg, opts);
    REQUIRE(fractions.size() == 3);
    for (double f : fractions)
    {
        CHECK(f == doctest::Approx(1.0 / 3.0).epsilon(0.2));
    }
}

TEST_CASE("more vehicles means longer delays")
{
    for (const std::string mode : {"C-R", "C-SC", "C-SA"})
    {
        const auto one = Run(Constant(mode, 10.0, 1), {});
        const auto five = Run(Constant(mode, 10.0, 5), {});
        CAPTURE(mode);
        CHECK(five.summary.delay.p50Ms > one.summary.delay.p50Ms);
    }
}

TEST_CASE("summary bookkeeping")
{
    const auto a = Run(Constant("C-R", 10.0, 2), {});
    const auto& s = a.summary;
    CHECK(s.windows == 200);
    CHECK(s.burstsCompleted <= s.burstsGenerated);
    CHECK(s.delay.count == s.burstsCompleted);
    CHECK(s.modeFraction == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(s.prrPooled >= 0.0);
    CHECK(s.prrPooled <= 1.0);
    CHECK(s.qosViolationFraction >= s.delayViolationFraction - 1e-12);
    CHECK(s.delay.p25Ms <= s.delay.p50Ms);
    CHECK(s.delay.p50Ms <= s.delay.p75Ms);
    CHECK(s.delay.p75Ms <= s.delay.p95Ms);
    const auto j = ToJson(s, ModeTable::Default());
    CHECK(j.at("per_ue").size() == 2);
    CHECK(j.at("mode_fraction").at("C-R") == 1.0);
}

TEST_CASE("figure data rows match the runs")
{
    TempDir runs("fig_runs"), out("fig_out"), empty("fig_empty");
    const auto r1 = Run(Constant("C-SC", 5.0, 2), runs.path / "sc");
    auto realCfg = Constant("C-R", 5.0, 1);
    realCfg.controller.mechanism = NotificationMechanism::Real;
    const auto r2 = Run(realCfg, runs.path / "r");

    const auto counts = EmitFigureData({runs.path / "sc", runs.path / "r"}, out.path);
    CHECK(counts.delayRows == r1.summary.burstsCompleted + r2.summary.burstsCompleted);
    CHECK(counts.prrRows == r1.summary.windows + r2.summary.windows);
    CHECK(LineCount(out.path / "delay.csv") == counts.delayRows + 1);
    std::ifstream in(out.path / "delay.csv");
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "policy,numUes,mechanism,seed,ue,delayMs");
    CHECK(row.rfind("constant:C-SC,2,ideal,1,", 0) == 0);

    auto off = Constant("C-SC", 2.0, 1);
    off.app.enabled = false;
    Run(off, runs.path / "off");
    const auto none = EmitFigureData({runs.path / "off"}, empty.path);
    CHECK(none.delayRows == 0);
    CHECK(Slurp(empty.path / "delay.csv") == "policy,numUes,mechanism,seed,ue,delayMs\n");
    CHECK_THROWS(EmitFigureData({runs.path / "missing"}, empty.path));
}

TEST_CASE("bundle files carry the documented headers")
{
    TempDir d("bundle");
    Run(Constant("C-SA", 2.0, 1), d.path);
    auto first = [&](const std::string& f) {
        std::ifstream in(d.path / f);
        std::string line;
        std::getline(in, line);
        return line;
    };
    CHECK(first("stats.csv") == "t,ue,mode,burstsSent,burstsReceived,bytesReceived,meanDelayMs,prr");
    CHECK(first("bursts.csv") == "ue,burstId,mode,sizeBytes,generatedAt,completedAt,delayMs");
    CHECK(first("cell.csv") == "t,attachedUes,activeUes,servedBytes,meanShare");
    CHECK(LineCount(d.path / "stats.csv") == 21);
    const auto summary = json::parse(Slurp(d.path / "summary.json"));
    CHECK(summary.at("seed") == 1);
    CHECK(summary.at("config").at("policy") == "constant:C-SA");
    CHECK(summary.at("metrics").at("mean_qoe").get<double>() == doctest::Approx(0.22).epsilon(1e-12));
    const auto echoed = ParseRunConfig(json::parse(Slurp(d.path / "run_config.json")));
    CHECK(echoed.policy.ToString() == "constant:C-SA");
}

TEST_CASE("command line")
{
    TempDir d("cli");
    {
        std::ofstream good(d.path / "good.json");
        good << R"({"policy": "constant:C-SA", "agent": {"mode": "off"}, "scenario": {"duration_s": 1}})";
        std::ofstream bad(d.path / "bad.json");
        bad << R"({"scenario": {"num_ues": -1}, "bogus": true})";
        std::ofstream broken(d.path / "broken.json");
        broken << "{";
    }
    CHECK(RunCli("validate-config -c " + (d.path / "good.json").string()) == 0);
    CHECK(RunCli("validate-config -c " + (d.path / "bad.json").string()) == 2);
    CHECK(RunCli("validate-config -c " + (d.path / "broken.json").string()) == 2);
    CHECK(RunCli("run -c " + (d.path / "good.json").string() + " --seeds 3,4 -o " + (d.path / "runs").string()) == 0);
    CHECK(fs::exists(d.path / "runs" / "seed-3" / "summary.json"));
    CHECK(fs::exists(d.path / "runs" / "seed-4" / "summary.json"));
    CHECK(RunCli("figdata " + (d.path / "runs" / "seed-3").string() + " -o " + (d.path / "fig").string()) == 0);
    CHECK(fs::exists(d.path / "fig" / "prr.csv"));
    CHECK(RunCli("frobnicate") != 0);
}

TEST_CASE("shipped example configs load and run")
{
    const fs::path data = RANAI_DATA_DIR;
    const auto defaults = LoadRunConfig((data / "default_config.json").string());
    CHECK(ToJson(defaults) == ToJson(RunConfig{}));

    auto cfg = LoadRunConfig((data / "example_trace_config.json").string());
    cfg.scenario.tracePath = (data / "channel_trace_sample.csv").string();
    cfg.app.frameTracePath = (data / "frame_trace_sample.csv").string();
    cfg.scenario.durationSeconds = 5.0;
    const auto a = Run(cfg, {});
    CHECK(a.summary.windows == 100);
    CHECK(std::abs(a.summary.meanQoe - 0.88) < 1e-12);
    CHECK(a.summary.burstsCompleted > 0);
}
