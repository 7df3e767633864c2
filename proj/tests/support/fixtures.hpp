#pragma once

#include "rescot/abstraction.hpp"

namespace rescot::testsupport {

/* Four states where pricing spikes by the union of all actions' targets
 * would go wrong: v has one action whose spike feeds the dead sink z and a
 * better one whose spike feeds the rank-1 state w2, so its value is 2.
 * ids: 0 = v, 1 = w2, 2 = t, 3 = z. */
inline BimodalAbstraction make_two_choice_fixture() {
  return make_bimodal(4, 2,
                      {
                          {2}, {2},  // v: both actions move to t
                          {2}, {},   // w2 -> t
                          {2}, {},   // t -> t
                          {3}, {},   // z -> z
                      },
                      {
                          {3}, {1},  // v: action 0 spikes to z, action 1 to w2
                          {3}, {},   // w2 spikes to z
                          {}, {},    // t clean
                          {}, {},    // z
                      },
                      {2, 2, 2, 1});
}

}  // namespace rescot::testsupport
