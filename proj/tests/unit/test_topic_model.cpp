// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include <algorithm>
#include <chrono>
#include <iterator>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "error.hpp"
#include "synthetic.hpp"
#include "test_support.hpp"
#include "topic_model.hpp"

namespace logoscope {
namespace {

using testing::SyntheticTopics;

LdaConfig config_for(std::size_t k, std::size_t iterations, std::uint64_t seed) {
  LdaConfig c;
  c.k = k;
  c.alpha = 0.1;
  c.beta = 0.01;
  c.iterations = iterations;
  c.seed = seed;
  return c;
}

std::vector<std::set<std::string>> learned_top_sets(const TopicModel& m, std::size_t n) {
  std::vector<std::set<std::string>> out;
  for (std::size_t t = 0; t < m.k(); ++t) {
    std::set<std::string> s;
    for (const auto& [term, p] : m.top_words(t, n)) s.insert(term);
    out.push_back(s);
  }
  return out;
}

TEST(Vocabulary, FiltersByDocumentFrequencyAndStopwords) {
  const std::vector<std::vector<std::string>> docs = {
      {"le", "banque", "taux"}, {"le", "banque", "rare"}, {"le", "taux", "banque"}, {"match", "stade"}};
  VocabularyOptions opt;
  opt.min_df = 2;
  opt.max_df_ratio = 0.7;
  const auto v = build_vocabulary(docs, opt);
  EXPECT_EQ(v.terms(), (std::vector<std::string>{"taux"}));
  opt.max_df_ratio = 1.0;
  opt.stopwords = {"le"};
  EXPECT_EQ(build_vocabulary(docs, opt).terms(), (std::vector<std::string>{"banque", "taux"}));
  opt.min_df = 9;
  EXPECT_THROW(build_vocabulary(docs, opt), Error);
  EXPECT_EQ(v.id("taux"), 0);
  EXPECT_EQ(v.id("absent"), -1);
}

TEST(TrainLda, RecoversSyntheticTopics) {
  const SyntheticTopics s = testing::make_synthetic_topics(3, 30, 200, 50, 0.1, 2026);
  const auto start = std::chrono::steady_clock::now();
  const auto model = train_lda(s.docs, Vocabulary(s.terms), config_for(3, 500, 11));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 30.0);

  std::vector<std::set<std::string>> truth;
  for (std::size_t t = 0; t < 3; ++t) truth.push_back(testing::true_top_terms(s, t, 10));
  const auto overlaps = testing::greedy_overlaps(truth, learned_top_sets(model, 10));
  ASSERT_EQ(overlaps.size(), 3u);
  for (auto o : overlaps) EXPECT_GE(o, 7u);
  EXPECT_GE(std::accumulate(overlaps.begin(), overlaps.end(), 0.0) / 3.0, 7.0);
}

TEST(TrainLda, CountsAreConservedAtEveryIteration) {
  const SyntheticTopics s = testing::make_synthetic_topics(3, 30, 60, 40, 0.1, 5);
  std::size_t seen = 0;
  train_lda(s.docs, Vocabulary(s.terms), config_for(4, 50, 3), [&](const GibbsState& g) {
    ++seen;
    EXPECT_EQ(g.corpus_tokens, 60u * 40u);
    EXPECT_EQ(g.topic_total, g.corpus_tokens);
    EXPECT_EQ(g.doc_topic_total, g.corpus_tokens);
    EXPECT_EQ(g.word_topic_total, g.corpus_tokens);
    EXPECT_EQ(g.n_k, g.n_k_from_docs);
    EXPECT_EQ(g.n_k, g.n_k_from_words);
    EXPECT_TRUE(g.doc_lengths_match);
  });
  EXPECT_EQ(seen, 51u);
}

TEST(TrainLda, DistributionsAreStochastic) {
  const SyntheticTopics s = testing::make_synthetic_topics(3, 30, 80, 30, 0.1, 9);
  const auto model = train_lda(s.docs, Vocabulary(s.terms), config_for(3, 100, 1));
  for (std::size_t t = 0; t < model.k(); ++t) {
    double sum = 0.0;
    for (std::size_t w = 0; w < model.vocabulary().size(); ++w) {
      EXPECT_GT(model.phi(t, w), 0.0);
      sum += model.phi(t, w);
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> doc;
    const std::size_t len = rng() % 30;
    for (std::size_t j = 0; j < len; ++j) doc.push_back(s.terms[rng() % s.terms.size()]);
    const auto r = model.infer(doc, 20, rng());
    EXPECT_NEAR(std::accumulate(r.proportions.begin(), r.proportions.end(), 0.0), 1.0, 1e-9);
    for (double p : r.proportions) EXPECT_GE(p, 0.0);
  }
}

TEST(TrainLda, FixedSeedIsBitIdentical) {
  const SyntheticTopics s = testing::make_synthetic_topics(3, 30, 50, 30, 0.1, 8);
  const auto a = train_lda(s.docs, Vocabulary(s.terms), config_for(3, 60, 42));
  const auto b = train_lda(s.docs, Vocabulary(s.terms), config_for(3, 60, 42));
  const auto c = train_lda(s.docs, Vocabulary(s.terms), config_for(3, 60, 43));
  EXPECT_EQ(a.topic_word(), b.topic_word());
  EXPECT_EQ(a.serialize(), b.serialize());
  EXPECT_NE(a.topic_word(), c.topic_word());
}

TEST(TrainLda, DisjointVocabulariesSeparate) {
  std::vector<std::vector<std::string>> docs;
  for (int d = 0; d < 20; ++d) {
    if (d % 2 == 0) {
      docs.push_back({"banque", "taux", "crédit", "banque", "taux", "crédit"});
    } else {
      docs.push_back({"match", "stade", "but", "match", "stade", "but"});
    }
  }
  const auto model =
      train_lda(docs, Vocabulary({"banque", "taux", "crédit", "match", "stade", "but"}), config_for(2, 200, 3));
  std::set<std::string> t0, t1;
  for (const auto& [w, p] : model.top_words(0, 3)) t0.insert(w);
  for (const auto& [w, p] : model.top_words(1, 3)) t1.insert(w);
  std::vector<std::string> common;
  std::set_intersection(t0.begin(), t0.end(), t1.begin(), t1.end(), std::back_inserter(common));
  EXPECT_TRUE(common.empty());
}

TEST(TrainLda, RejectsBadConfigurations) {
  const std::vector<std::vector<std::string>> docs = {{"a"}, {"b"}};
  try {
    train_lda(docs, Vocabulary({"a", "b"}), config_for(3, 10, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "KTooLarge");
  }
  EXPECT_THROW(train_lda(docs, Vocabulary(), config_for(2, 10, 1)), Error);
}

TEST(TopWords, OrderingAndClamp) {
  const TopicModel m(2, Vocabulary({"a", "b", "c"}), {0.2, 0.6, 0.2, 0.5, 0.25, 0.25}, 0.1, 0.01, 1, 1);
  const auto top = m.top_words(0, 3);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0].first, "b");
  EXPECT_EQ(top[1].first, "a");
  EXPECT_EQ(top[2].first, "c");
  EXPECT_TRUE(m.top_words(1, 0).empty());
  EXPECT_EQ(m.top_words(1, 10).size(), 3u);
  EXPECT_THROW(m.top_words(2, 1), Error);
}

TEST(Infer, SingleTopicDocumentAndOutOfVocabulary) {
  const SyntheticTopics s = testing::make_synthetic_topics(3, 30, 200, 50, 0.1, 2026);
  std::vector<double> phi;
  for (const auto& row : s.topic_word) phi.insert(phi.end(), row.begin(), row.end());
  const TopicModel model(3, Vocabulary(s.terms), phi, 0.1, 0.01, 1, 1);
  std::mt19937_64 rng(77);
  for (std::size_t t = 0; t < 3; ++t) {
    std::vector<std::string> doc;
    for (int i = 0; i < 60; ++i) doc.push_back(s.terms[testing::sample_index(rng, s.topic_word[t])]);
    const auto r = model.infer(doc, 100, 5);
    EXPECT_FALSE(r.out_of_vocabulary);
    const auto best = std::max_element(r.proportions.begin(), r.proportions.end()) - r.proportions.begin();
    EXPECT_EQ(static_cast<std::size_t>(best), t);
    EXPECT_GT(r.proportions[t], 0.6);
  }
  const auto oov = model.infer({"inconnu", "absent"});
  EXPECT_TRUE(oov.out_of_vocabulary);
  for (double p : oov.proportions) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
  EXPECT_TRUE(model.infer({}).out_of_vocabulary);
  EXPECT_EQ(model.infer(s.docs[0], 30, 9).proportions, model.infer(s.docs[0], 30, 9).proportions);
}

TEST(TopicModelFile, SaveLoadRoundTrip) {
  testing::TempDir dir;
  const SyntheticTopics s = testing::make_synthetic_topics(3, 30, 40, 20, 0.1, 1);
  const auto model = train_lda(s.docs, Vocabulary(s.terms), config_for(3, 20, 5));
  model.save(dir / "model.txt");
  const auto loaded = TopicModel::load(dir / "model.txt");
  EXPECT_EQ(loaded.topic_word(), model.topic_word());
  EXPECT_EQ(loaded.vocabulary().terms(), model.vocabulary().terms());
  EXPECT_EQ(loaded.alpha(), model.alpha());
  EXPECT_EQ(loaded.seed(), 5u);
  try {
    TopicModel::load(dir / "absent.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "ModelMissing");
  }
  EXPECT_THROW(TopicModel::deserialize("not a model\n"), Error);
}

}  // namespace
}  // namespace logoscope
