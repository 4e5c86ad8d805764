from london_states.cli import main

raise SystemExit(main())
