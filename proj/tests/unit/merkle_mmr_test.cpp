#include <gtest/gtest.h>

#include <random>

#include "golden.hpp"
#include "lazylight/error.hpp"
#include "lazylight/merkle.hpp"
#include "lazylight/mmr.hpp"

using namespace lazylight;

namespace {

Bytes leaf_bytes(std::uint64_t i) { return Encoder().u64(i).take(); }

std::vector<Bytes> leaves(std::uint64_t n, std::uint64_t salt = 0) {
  std::vector<Bytes> out;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(leaf_bytes(i + salt));
  return out;
}

// Straightforward level-by-level reference over plain vectors.
Digest naive_root(std::vector<Digest> level, unsigned m) {
  while (level.size() > 1) {
    std::vector<Digest> up;
    for (std::size_t i = 0; i < level.size(); i += m) {
      const std::size_t end = std::min(level.size(), i + m);
      up.push_back(inner_digest(std::vector<Digest>(level.begin() + i, level.begin() + end)));
    }
    level = std::move(up);
  }
  return level.front();
}

std::vector<Digest> leaf_digests(const std::vector<Bytes>& ls) {
  std::vector<Digest> out;
  for (const auto& l : ls) out.push_back(leaf_digest(l));
  return out;
}

}  // namespace

TEST(Merkle, HeightAndChildCounts) {
  EXPECT_EQ(tree_height(1, 2), 0u);
  EXPECT_EQ(tree_height(8, 2), 3u);
  EXPECT_EQ(tree_height(8, 3), 2u);
  EXPECT_EQ(tree_height(65536, 300), 2u);
  EXPECT_EQ(tree_height(8388608, 300), 3u);
  EXPECT_EQ(level_sizes(8, 3), (std::vector<std::uint64_t>{8, 3, 1}));
  EXPECT_EQ(child_count(8, 3, 1, 0), 3u);
  EXPECT_EQ(child_count(8, 3, 1, 2), 2u);
  EXPECT_EQ(child_count(8, 3, 2, 0), 3u);
}

TEST(Merkle, RootMatchesNaiveReference) {
  for (unsigned m : {2u, 3u, 4u, 5u, 16u}) {
    for (std::uint64_t n = 1; n <= 128; n *= 2) {
      const auto ls = leaves(n, m);
      EXPECT_EQ(MerkleTree::from_leaves(ls, m).root(), naive_root(leaf_digests(ls), m)) << "m=" << m << " n=" << n;
    }
  }
}

TEST(Merkle, RejectsNonPowerOfTwoAndBadArity) {
  EXPECT_THROW(MerkleTree::from_leaves(leaves(3), 2), Error);
  EXPECT_THROW(MerkleTree::from_leaves(leaves(4), 1), Error);
}

TEST(Merkle, EveryProofVerifiesAndOnlyAtItsIndex) {
  for (unsigned m : {2u, 3u, 4u}) {
    const auto ls = leaves(32);
    const MerkleTree t = MerkleTree::from_leaves(ls, m);
    for (std::uint64_t i = 0; i < ls.size(); ++i) {
      const InclusionProof p = t.prove(i);
      EXPECT_TRUE(verify_inclusion(p, t.root(), i, ls[i], m));
      EXPECT_FALSE(verify_inclusion(p, t.root(), i, leaf_bytes(999), m));
      EXPECT_FALSE(verify_inclusion(p, t.root(), (i + 1) % ls.size(), ls[i], m));
    }
  }
}

TEST(Merkle, MutatedProofsFail) {
  const unsigned m = 4;
  const auto ls = leaves(64);
  const MerkleTree t = MerkleTree::from_leaves(ls, m);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t i = rng() % ls.size();
    InclusionProof p = t.prove(i);
    auto& step = p.path[rng() % p.path.size()];
    switch (trial % 4) {
      case 0: step.siblings[rng() % step.siblings.size()].bytes[rng() % kDigestSize] ^= 1; break;
      case 1: step.position = (step.position + 1) % m; break;
      case 2: step.siblings.push_back(Digest{}); break;
      default: p.path.pop_back(); break;
    }
    EXPECT_FALSE(verify_inclusion(p, t.root(), i, ls[i], m)) << "trial " << trial;
  }
}

TEST(Merkle, ProofEncodingRoundTrips) {
  const MerkleTree t = MerkleTree::from_leaves(leaves(16), 3);
  const InclusionProof p = t.prove(11);
  Encoder enc;
  encode_into(enc, p);
  const Bytes b = enc.take();
  Decoder dec(b);
  const InclusionProof q = decode_inclusion_proof(dec);
  EXPECT_TRUE(dec.done());
  EXPECT_EQ(q.leaf_index, p.leaf_index);
  EXPECT_TRUE(verify_inclusion(q, t.root(), 11, leaf_bytes(11), 3));
}

TEST(Merkle, OpenChildrenFollowsPath) {
  const MerkleTree t = MerkleTree::from_leaves(leaves(16), 2);
  EXPECT_EQ(inner_digest(t.open_children({})), t.root());
  const std::vector<std::uint32_t> path{1, 0};
  const auto kids = t.open_children(path);
  EXPECT_EQ(kids.size(), 2u);
  EXPECT_EQ(inner_digest(kids), t.node(2, 2));
}

TEST(Merkle, SubrangeRootEqualsFreshTree) {
  for (unsigned m : {2u, 3u, 4u}) {
    const auto ls = leaves(64);
    const MerkleTree t = MerkleTree::from_leaves(ls, m);
    for (std::uint64_t size = 1; size <= 64; size *= 2) {
      for (std::uint64_t off = 0; off + size <= 64; off += size) {
        const std::vector<Bytes> part(ls.begin() + off, ls.begin() + off + size);
        EXPECT_EQ(subrange_root(t, off, size), MerkleTree::from_leaves(part, m).root())
            << "m=" << m << " off=" << off << " size=" << size;
      }
    }
  }
}

TEST(Merkle, MergeEqualsRebuild) {
  for (unsigned m : {2u, 3u, 16u}) {
    const auto a = leaves(32, 0);
    const auto b = leaves(32, 32);
    std::vector<Bytes> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const MerkleTree merged = MerkleTree::merge(MerkleTree::from_leaves(a, m), MerkleTree::from_leaves(b, m));
    EXPECT_EQ(merged.root(), MerkleTree::from_leaves(both, m).root());
  }
}

TEST(Merkle, WithLeafDigestUpdatesPath) {
  const auto ls = leaves(16);
  const MerkleTree t = MerkleTree::from_leaves(ls, 3);
  const Digest d = leaf_digest(leaf_bytes(77));
  auto modified = ls;
  modified[5] = leaf_bytes(77);
  EXPECT_EQ(t.with_leaf_digest(5, d).root(), MerkleTree::from_leaves(modified, 3).root());
  EXPECT_NE(t.with_leaf_digest(5, d).root(), t.root());
}

TEST(Mmr, SegmentLengthsAreSetBits) {
  EXPECT_EQ(segment_lengths(1), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(segment_lengths(13), (std::vector<std::uint64_t>{8, 4, 1}));
  EXPECT_EQ(segment_lengths(64), (std::vector<std::uint64_t>{64}));
  EXPECT_THROW(segment_lengths(0), Error);
}

TEST(Mmr, PeaksMatchFrozenVectors) {
  const auto rows = test::golden_rows(std::string("mmr_") + LAZYLIGHT_GOLDEN_HASH + ".csv");
  ASSERT_EQ(rows.size(), 36u);
  for (const auto& r : rows) {
    const auto m = static_cast<unsigned>(std::stoul(r[0]));
    const std::uint64_t n = std::stoull(r[1]);
    const Peaks p = MountainRange::build(leaves(n), m).peaks();
    const auto sizes = test::split(r[2], ';');
    const auto roots = test::split(r[3], ';');
    ASSERT_EQ(p.sizes.size(), sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      EXPECT_EQ(p.sizes[k], std::stoull(sizes[k]));
      EXPECT_EQ(p.roots[k].hex(), roots[k]) << "m=" << m << " n=" << n << " peak " << k;
    }
  }
}

TEST(Mmr, AppendEqualsBatch) {
  for (unsigned m : {2u, 3u, 4u, 16u}) {
    const auto ls = leaves(100);
    MountainRange inc = MountainRange::build(std::span(ls).first(1), m);
    for (std::size_t n = 2; n <= ls.size(); ++n) {
      inc = inc.append(ls[n - 1]);
      EXPECT_EQ(inc.peaks(), MountainRange::build(std::span(ls).first(n), m).peaks()) << "m=" << m << " n=" << n;
    }
  }
}

TEST(Mmr, LocateAndProve) {
  const auto ls = leaves(13);
  const MountainRange mr = MountainRange::build(ls, 2);
  const auto loc = mr.locate(9);
  EXPECT_EQ(loc.tree, 1u);
  EXPECT_EQ(loc.offset, 8u);
  EXPECT_EQ(loc.local, 1u);
  EXPECT_EQ(mr.tree_offset(2), 12u);
  for (std::uint64_t i = 0; i < ls.size(); ++i) {
    const auto l = mr.locate(i);
    EXPECT_TRUE(verify_inclusion(mr.prove(i), mr.trees()[l.tree].root(), l.local, ls[i], 2));
  }
  EXPECT_THROW(mr.locate(13), Error);
}

TEST(Mmr, PeaksWellShapedAndEncode) {
  const Peaks p = MountainRange::build(leaves(21), 3).peaks();
  EXPECT_TRUE(p.well_shaped());
  EXPECT_EQ(p.total(), 21u);
  const Bytes b = encode(p);
  Decoder dec(b);
  EXPECT_EQ(decode_peaks(dec), p);
  Peaks bad = p;
  std::swap(bad.sizes[0], bad.sizes[1]);
  EXPECT_FALSE(bad.well_shaped());
}

TEST(Mmr, WithLeafDigestTouchesOnlyItsTree) {
  const auto ls = leaves(13);
  const MountainRange mr = MountainRange::build(ls, 2);
  const MountainRange changed = mr.with_leaf_digest(10, leaf_digest(leaf_bytes(500)));
  const Peaks a = mr.peaks();
  const Peaks b = changed.peaks();
  EXPECT_EQ(a.roots[0], b.roots[0]);
  EXPECT_NE(a.roots[1], b.roots[1]);
  EXPECT_EQ(a.roots[2], b.roots[2]);
}
