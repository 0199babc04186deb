#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "dynacct/strategy.hpp"

namespace dynacct {

enum class ReportStatus { Clean, Defected };

/// (round, subject, reporter): the reporter's account of how the subject behaved toward it.
using ReportKey = std::tuple<Round, AgentId, AgentId>;

struct GenTables : MonitoringInfo {
  int n = 0;
  std::vector<int> pend;                       // [subject * n + residue of round]
  std::map<ReportKey, ReportStatus> acc;       // absent entries are "no interaction"

  int pending(AgentId subject, Round round) const;
  void fingerprint(std::vector<std::int64_t>& out) const override;
};

/// Switches used only to check that the boundedness assertions can fail.
struct GenMutation {
  bool cap_pending = true;
  bool drain = true;
};

/// Pending-punishment protocol for general exchanges under degree observation.
class GenMachine : public StrategyMachine {
 public:
  GenMachine(AgentId self, const ProtocolContext& ctx, GenMutation mutation = {});

  std::unique_ptr<StrategyMachine> clone() const override { return std::make_unique<GenMachine>(*this); }
  std::string name() const override { return "sigma_gen"; }
  void observe(const LocalView& view) override;
  Decision decide() const override;
  Payload payload_for(AgentId neighbor) const override;
  void record(const RoundOutcome& outcome) override;
  void fingerprint(std::vector<std::int64_t>& out) const override;
  std::size_t state_size() const override;

  // Valid for rounds in (last recorded round - n + 1, last recorded round + 1].
  int pending(AgentId subject, Round round) const { return tables_->pending(subject, round); }
  std::optional<ReportStatus> report(AgentId reporter, AgentId subject, Round round) const;
  const GenTables& tables() const { return *tables_; }

  // n*n pending counters plus at most n rounds of n*(n-1) reports.
  static std::size_t state_bound(int n) { return static_cast<std::size_t>(n) * n + static_cast<std::size_t>(n) * n * (n - 1); }

 private:
  AgentId self_;
  int n_;
  GenMutation mutation_;
  LocalView view_;
  std::shared_ptr<GenTables> tables_;
};

MachinePtr sigma_gen(AgentId self, const ProtocolContext& ctx, GenMutation mutation = {});

}  // namespace dynacct
