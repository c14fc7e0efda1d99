/* Copyright 2026 The Metamorph Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

/* Compiled as C to keep the public header free of C++. */
#include "metamorph/metamorph.h"

int mm_header_check_default_ok(void) {
  mm_thresholds t = mm_default_thresholds();
  return t.epsilon_is > 0 && mm_status_name(MM_OK) != 0;
}
