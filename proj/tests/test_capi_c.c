/* The header must compile as C; exercises a few calls end to end. */
#include <stdio.h>
#include <string.h>

#include "symflow/symflow.h"

int main(void) {
  sf_subshift* s = NULL;
  double h = 0;
  int exact = 0;
  char word[64];
  int certified = 0;
  if (sf_subshift_from_json("{\"kind\":\"golden-mean\"}", &s) != SF_OK) return 1;
  if (sf_subshift_entropy(s, 20, &h, &exact) != SF_OK || !exact) return 2;
  if (h < 0.4812118250 || h > 0.4812118251) return 3;
  sf_subshift_free(s);
  if (sf_subshift_from_json("{\"kind\":\"nope\"}", &s) != SF_ERR_PARSE) return 4;
  if (strlen(sf_last_error()) == 0) return 5;
  if (sf_subshift_from_json("{\"kind\":\"sturmian\",\"alpha\":{\"a\":\"-1\",\"b\":\"1\"}}", &s) != SF_OK) return 6;
  if (sf_marker_build(s, 5, 64, 100, word, sizeof word, &certified) != SF_OK || !certified) return 7;
  sf_subshift_free(s);
  printf("marker %s\n", word);
  return 0;
}
