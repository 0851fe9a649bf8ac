#include "survsim/protocol.hpp"

#include <algorithm>
#include <string>

#include "survsim/error.hpp"

namespace survsim {

std::string_view to_string(Technique technique) {
  switch (technique) {
    case Technique::Br: return "br";
    case Technique::Fl: return "fl";
    case Technique::BrCBr: return "brcbr";
    case Technique::BrCLFl: return "brclfl";
    case Technique::AdLH: return "adlh";
    case Technique::AdFH: return "adfh";
  }
  return "?";
}

Technique parse_technique(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "br") return Technique::Br;
  if (t == "fl") return Technique::Fl;
  if (t == "brcbr") return Technique::BrCBr;
  if (t == "brclfl") return Technique::BrCLFl;
  if (t == "adlh") return Technique::AdLH;
  if (t == "adfh") return Technique::AdFH;
  throw ConfigError("unknown technique '" + std::string(text) + "'");
}

Node::Node(ViewOwner self, ProtocolParams params) : self_(self), params_(params), view_(self) {}

void Node::note_recent(ItemId id) {
  if (params_.technique != Technique::AdLH) return;
  std::erase(recent_, id);
  recent_.push_back(id);
  if (recent_.size() > params_.digest_window) recent_.erase(recent_.begin());
}

void Node::transmit_immediate(std::vector<DataMessage>& out) {
  for (auto& m : immediate_) {
    note_recent(m.item.id);
    out.push_back(m);
  }
  immediate_.clear();
}

std::size_t Node::neighbors_lacking(ItemId id) const {
  std::size_t n = 0;
  for (const auto& r : view_.neighbors())
    if (!r.digest || !r.digest->contains(id)) ++n;
  return n;
}

void Node::on_data_created(const DataItem& item, double now, std::vector<DataMessage>& out) {
  storage_.insert(item.id);
  switch (params_.technique) {
    case Technique::Br:
      out.push_back({item, item.surv_requirement, 1});
      break;
    case Technique::Fl:
      out.push_back({item, item.surv_requirement, params_.ttl_full});
      break;
    case Technique::BrCBr:
    case Technique::BrCLFl:
      out.push_back({item, item.surv_requirement, 1});
      pending_.push_back(item);
      break;
    case Technique::AdLH:
    case Technique::AdFH:
      scout_send_data({item, item.surv_requirement, 0}, now, out);
      break;
  }
}

void Node::on_data_received(const DataMessage& msg, double now, std::vector<DataMessage>& out) {
  const bool fresh = storage_.insert(msg.item.id);
  note_recent(msg.item.id);
  // Collectors only log.
  if (is_collector(self_.role)) return;

  const int relay_ttl = msg.ttl - 1;
  switch (params_.technique) {
    case Technique::Br:
      break;
    case Technique::Fl:
      if (fresh && relay_ttl > 0) out.push_back({msg.item, msg.surv_remaining, relay_ttl});
      break;
    case Technique::BrCBr:
      if (fresh) pending_.push_back(msg.item);
      break;
    case Technique::BrCLFl:
      if (fresh) {
        pending_.push_back(msg.item);
        if (relay_ttl > 0) out.push_back({msg.item, msg.surv_remaining, relay_ttl});
      }
      break;
    case Technique::AdLH:
    case Technique::AdFH:
      if (msg.surv_remaining > 0.0) scout_send_data({msg.item, msg.surv_remaining, 0}, now, out);
      scout_check_q(now, out);
      break;
  }
}

void Node::on_hello_received(const HelloMessage& hello, double now, std::vector<DataMessage>& out) {
  view_.update({hello.sender, hello.role, hello.home_area, hello.area_kind, hello.failure_rate,
                hello.area_failure_rate, hello.repo_digest, now});
  view_.expire(now, params_.staleness);
  if (is_collector(self_.role)) return;

  if (is_cumulative(params_.technique)) {
    if (!is_collector(hello.role)) return;
    const int ttl = params_.technique == Technique::BrCBr ? 1 : params_.ttl_limited;
    for (const auto& item : pending_) out.push_back({item, item.surv_requirement, ttl});
    pending_.clear();
    last_archivist_hello_ = now;
  } else if (is_adaptive(params_.technique)) {
    scout_check_q(now, out);
  }
}

void Node::scout_send_data(DataMessage msg, double now, std::vector<DataMessage>& out) {
  view_.expire(now, params_.staleness);
  const double fp = failure_probability(params_.model, view_);
  const double diff = msg.surv_remaining - (1.0 - fp);
  const std::size_t lacking = neighbors_lacking(msg.item.id);
  if (lacking > 0) {
    msg.surv_remaining = diff > 0.0 ? diff / static_cast<double>(lacking) : 0.0;
    immediate_.push_back(msg);
  } else if (diff > 0.0) {
    delayed_.push_back(msg);
  }
  if (!immediate_.empty()) transmit_immediate(out);
}

void Node::scout_check_q(double now, std::vector<DataMessage>& out) {
  if (delayed_.empty()) return;
  std::deque<DataMessage> snapshot;
  snapshot.swap(delayed_);
  for (auto& msg : snapshot)
    if (msg.surv_remaining > 0.0) scout_send_data(msg, now, out);
}

bool Node::beacons() const {
  if (is_adaptive(params_.technique)) return true;
  if (is_cumulative(params_.technique)) return is_collector(self_.role);
  return false;
}

std::optional<HelloMessage> Node::emit_hello(double now) const {
  if (!beacons()) return std::nullopt;
  HelloMessage h{self_.id, self_.role, self_.home_area, self_.area_kind, self_.failure_rate,
                 self_.area_failure_rate, nullptr, now};
  if (params_.technique == Technique::AdLH)
    h.repo_digest = RepoDigest::window(recent_);
  else if (params_.technique == Technique::AdFH)
    h.repo_digest = RepoDigest::full(storage_);
  return h;
}

}  // namespace survsim
