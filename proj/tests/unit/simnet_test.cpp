#include <gtest/gtest.h>

#include "lazylight/simnet.hpp"

using namespace lazylight;

namespace {

class Echo : public Party {
 public:
  std::optional<Message> handle(PartyId, const Message& msg) override {
    ++calls;
    return Message{MessageKind::SizeReply, msg.payload};
  }
  int calls = 0;
};

// Answers its first `replies` requests, then goes silent.
class Quitter : public Party {
 public:
  explicit Quitter(int replies) : left_(replies) {}
  std::optional<Message> handle(PartyId, const Message&) override {
    if (left_ == 0) return std::nullopt;
    --left_;
    return Message{MessageKind::SizeReply, {}};
  }

 private:
  int left_;
};

}  // namespace

TEST(Simnet, ConfigValidation) {
  NetworkConfig c;
  EXPECT_NO_THROW(c.validate());
  c.arity = 1;
  EXPECT_ANY_THROW(c.validate());
  c = NetworkConfig{};
  c.delta = 0;
  EXPECT_ANY_THROW(c.validate());
  c = NetworkConfig{};
  c.u = 0;
  EXPECT_ANY_THROW(c.validate());
  EXPECT_EQ(NetworkConfig{}.monologue_cap(), 20u);
}

TEST(Simnet, DeliveryIsNextRound) {
  Network net(NetworkConfig{});
  Echo echo;
  const PartyId id = net.add_party(&echo);
  net.send(kVerifierId, id, Message{MessageKind::GetSize, {}}, true);
  EXPECT_EQ(echo.calls, 0);
  const auto delivered = net.advance_round();
  EXPECT_EQ(delivered.size(), 1u);
  EXPECT_EQ(echo.calls, 1);
  EXPECT_EQ(net.round(), 1u);
}

TEST(Simnet, OrderBySenderThenSequence) {
  Network net(NetworkConfig{});
  Echo a;
  Echo b;
  const PartyId ia = net.add_party(&a);
  const PartyId ib = net.add_party(&b);
  net.send(ib, ia, Message{MessageKind::GetSize, {2}}, false);
  net.send(ia, ib, Message{MessageKind::GetSize, {1}}, false);
  net.send(ib, ia, Message{MessageKind::GetSize, {3}}, false);
  const auto d = net.advance_round();
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].from, ia);
  EXPECT_EQ(d[1].msg.payload, Bytes{2});
  EXPECT_EQ(d[2].msg.payload, Bytes{3});
}

TEST(Simnet, RequestTakesTwoRoundsAndFourDeltaPerExchange) {
  NetworkConfig c;
  c.delta = 0.01;
  c.bandwidth = 1e6;
  Network net(c);
  Echo echo;
  const PartyId id = net.add_party(&echo);
  const auto reply = net.request(id, Message{MessageKind::GetSize, Bytes(125, 0)});
  ASSERT_TRUE(reply.has_value());
  EXPECT_EQ(net.round(), 2u);
  // 2 rounds of delay plus 1000 prover bits at 1 Mb/s; the verifier's send is free.
  EXPECT_NEAR(net.stats().sim_seconds, 0.02 + 0.001, 1e-12);
  net.request(id, Message{MessageKind::GetSize, {}});
  EXPECT_NEAR(net.stats().sim_seconds, 4 * 0.01 + 0.001, 1e-12);
  EXPECT_EQ(net.stats().messages, 4u);
}

TEST(Simnet, AccountCost) {
  NetworkConfig c;
  c.bandwidth = 8e3;
  const Cost cost = account_cost(Message{MessageKind::Children, Bytes(1000, 0)}, c);
  EXPECT_EQ(cost.bits, 8000u);
  EXPECT_DOUBLE_EQ(cost.seconds, 1.0);
  EXPECT_EQ(account_cost(Message{}, c).seconds, 0.0);
}

TEST(Simnet, StallerTimesOutRoundAfterSecondOwedReply) {
  Network net(NetworkConfig{});
  Quitter q(1);
  const PartyId id = net.add_party(&q);
  EXPECT_TRUE(net.request(id, Message{MessageKind::GetSize, {}}).has_value());
  EXPECT_FALSE(net.timed_out(id));
  net.send(kVerifierId, id, Message{MessageKind::GetSize, {}}, true);
  net.advance_round();  // second query delivered at round 3; the reply is owed by round 4
  EXPECT_EQ(net.round(), 3u);
  EXPECT_FALSE(net.timed_out(id));
  net.advance_round();
  EXPECT_TRUE(net.timed_out(id));
  EXPECT_EQ(net.round(), 4u);
}

TEST(Simnet, TranscriptIsJsonLines) {
  Network net(NetworkConfig{});
  GameTranscript t;
  net.set_transcript(&t);
  Echo echo;
  const PartyId id = net.add_party(&echo);
  net.request(id, Message{MessageKind::GetSize, {0xab}});
  net.note("adjudication", 1, 2, "outcome", "x");
  EXPECT_EQ(t.message_count(), 2u);
  const std::string s = t.to_jsonl();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 3);
  EXPECT_NE(s.find(R"("kind":"GetSize")"), std::string::npos);
  EXPECT_NE(s.find(R"("detail":"ab")"), std::string::npos);
}
