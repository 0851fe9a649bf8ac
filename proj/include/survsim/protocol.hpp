#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "survsim/failure.hpp"
#include "survsim/item_set.hpp"
#include "survsim/scenario.hpp"

namespace survsim {

enum class Technique { Br, Fl, BrCBr, BrCLFl, AdLH, AdFH };

std::string_view to_string(Technique technique);
Technique parse_technique(std::string_view text);
inline bool is_adaptive(Technique t) { return t == Technique::AdLH || t == Technique::AdFH; }
inline bool is_cumulative(Technique t) { return t == Technique::BrCBr || t == Technique::BrCLFl; }

inline constexpr int kDataTypes = 3;

struct DataId {
  RobotId producer = 0;
  std::uint32_t sequence = 0;

  friend bool operator==(const DataId&, const DataId&) = default;
};

struct DataItem {
  ItemId id = 0;               // dense mission-wide index
  DataId data_id;
  int data_type = 1;           // 1..kDataTypes
  double surv_requirement = 1.0;
  double created_at = 0.0;
  std::uint32_t size = 500;
};

struct DataMessage {
  DataItem item;
  double surv_remaining = 0.0;  // survivability still to be acquired downstream
  int ttl = 0;                  // hop budget, flooding variants only
};

struct HelloMessage {
  RobotId sender = 0;
  RobotRole role = RobotRole::Scout;
  AreaId home_area = 0;
  AreaKind area_kind = AreaKind::Working;
  double failure_rate = 0.0;
  double area_failure_rate = 0.0;
  std::shared_ptr<const RepoDigest> repo_digest;  // null when the technique carries none
  double sent_at = 0.0;
};

struct ProtocolParams {
  Technique technique = Technique::Br;
  FailureModel model = FailureModel::IndependentRobot;
  int ttl_full = 10;           // Fl
  int ttl_limited = 3;         // cumulative flood of BrCLFl
  std::size_t digest_window = 10;
  double staleness = 15.0;     // seconds a HELLO record stays in the view
};

/// Per-robot replication state machine. Handlers append the broadcasts they
/// trigger to `out`; the caller owns delivery.
class Node {
 public:
  Node(ViewOwner self, ProtocolParams params);

  void on_data_created(const DataItem& item, double now, std::vector<DataMessage>& out);
  void on_data_received(const DataMessage& msg, double now, std::vector<DataMessage>& out);
  void on_hello_received(const HelloMessage& hello, double now, std::vector<DataMessage>& out);

  /// Adaptive send decision for one message.
  void scout_send_data(DataMessage msg, double now, std::vector<DataMessage>& out);
  /// Re-examines every delayed message once.
  void scout_check_q(double now, std::vector<DataMessage>& out);

  /// Whether this robot beacons at all under the configured technique.
  bool beacons() const;
  std::optional<HelloMessage> emit_hello(double now) const;

  RobotId id() const { return self_.id; }
  RobotRole role() const { return self_.role; }
  const ProtocolParams& params() const { return params_; }
  const ItemSet& storage() const { return storage_; }
  const std::deque<DataMessage>& delayed() const { return delayed_; }
  const NeighborhoodView& view() const { return view_; }
  const std::vector<ItemId>& recent_ids() const { return recent_; }
  std::size_t pending_since_hello() const { return pending_.size(); }
  std::optional<double> last_archivist_hello_at() const { return last_archivist_hello_; }

 private:
  void note_recent(ItemId id);
  void transmit_immediate(std::vector<DataMessage>& out);
  std::size_t neighbors_lacking(ItemId id) const;

  ViewOwner self_;
  ProtocolParams params_;
  std::vector<DataMessage> immediate_;   // B
  std::deque<DataMessage> delayed_;      // Q
  ItemSet storage_;                      // S
  NeighborhoodView view_;
  std::vector<ItemId> recent_;           // last digest_window ids sent or received, oldest first
  std::vector<DataItem> pending_;        // stored since the last collector HELLO
  std::optional<double> last_archivist_hello_;
};

}  // namespace survsim
